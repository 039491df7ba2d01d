#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "omega/operators.hpp"

using namespace omega;
using doctest::Approx;

namespace {

// change-of-variables value of the squared HS norm for the Gaussian test
// kernel exp(-k^2) exp(-k'^2) / |k-k'|^(1/4):
//   sqrt(pi/2) * 2^(-1/2) * Gamma(1/4)
double gaussian_hs2_oracle() {
  return std::sqrt(M_PI / 2.0) * std::pow(2.0, -0.5) * std::tgamma(0.25);
}

KernelSpec gaussian_kernel(double alpha) {
  return KernelSpec(alpha, SuppressionWeight::gaussian(1.0));
}

}  // namespace

TEST_CASE("kernel validation") {
  CHECK_THROWS_AS(KernelSpec(-0.1, SuppressionWeight::gaussian(1.0)),
                  std::invalid_argument);
}

TEST_CASE("hs norm: gaussian test kernel against the gamma oracle") {
  const auto result = hs_norm_direct(gaussian_kernel(0.25), 1e-6);
  REQUIRE(std::holds_alternative<QuadratureResult>(result));
  const auto& r = std::get<QuadratureResult>(result);
  CHECK(r.converged);
  const double oracle = gaussian_hs2_oracle();
  CHECK(std::abs(r.value - oracle) / oracle < 1e-6);
}

TEST_CASE("hs norm: smooth separable kernel factorizes") {
  // alpha = 0: value is (int exp(-2k^2) dk)^2 = pi/2
  const auto result = hs_norm_direct(gaussian_kernel(0.0), 1e-10);
  REQUIRE(std::holds_alternative<QuadratureResult>(result));
  CHECK(std::get<QuadratureResult>(result).value == Approx(M_PI / 2.0).epsilon(1e-10));
}

TEST_CASE("hs norm: symbolic refusals") {
  // non-integrable diagonal
  const auto diag = hs_norm_direct(gaussian_kernel(0.6), 1e-8);
  REQUIRE(std::holds_alternative<ConvergenceVerdict>(diag));
  CHECK(std::get<ConvergenceVerdict>(diag).deciding_inequality == "2*alpha_kernel < d");

  // weight with too little decay
  RegulatorParams p;
  p.beta = 0.2;
  p.eta = 0.0;
  const auto weak = hs_norm_direct(KernelSpec(0.25, p), 1e-8);
  REQUIRE(std::holds_alternative<ConvergenceVerdict>(weak));
  CHECK(std::get<ConvergenceVerdict>(weak).deciding_inequality == "4*beta > d");

  const auto unit = hs_norm_direct(KernelSpec(0.25, SuppressionWeight::unit()), 1e-8);
  REQUIRE(std::holds_alternative<ConvergenceVerdict>(unit));
}

TEST_CASE("hs norm: quartic homogeneity in the weight amplitude") {
  const auto base = hs_norm_direct(gaussian_kernel(0.25), 1e-7);
  const KernelSpec doubled(0.25, SuppressionWeight::gaussian(1.0).scaled(2.0));
  const auto scaled = hs_norm_direct(doubled, 1e-7);
  const double ratio = std::get<QuadratureResult>(scaled).value /
                       std::get<QuadratureResult>(base).value;
  CHECK(ratio == Approx(16.0).epsilon(1e-7));
}

TEST_CASE("hs norm: oversized exclusion band trips the delta check") {
  HsNormOptions opts;
  opts.tol = 1e-8;
  opts.exclusion_delta_rel = 0.4;
  CHECK_THROWS_AS(hs_norm_direct(gaussian_kernel(0.25), opts), diagnostic_error);
}

TEST_CASE("hs norm: regulator-weight kernel is finite and delta-stable") {
  RegulatorParams p;
  p.beta = 1.5;
  p.eta = 0.0;
  const auto result = hs_norm_direct(KernelSpec(0.25, p), 1e-5);
  REQUIRE(std::holds_alternative<QuadratureResult>(result));
  CHECK(std::get<QuadratureResult>(result).value > 0.0);
}

TEST_CASE("nystrom: shapes and exact symmetry") {
  const auto tiny = nystrom_discretize(gaussian_kernel(0.25), 2, 6.0);
  CHECK(tiny.matrix.rows() == 2);
  CHECK(tiny.matrix.cols() == 2);
  CHECK(tiny.nodes.size() == 2);
  CHECK(tiny.weights.size() == 2);
  CHECK(tiny.matrix(0, 1) == tiny.matrix(1, 0));

  const auto op = nystrom_discretize(gaussian_kernel(0.25), 33, 6.0);
  CHECK((op.matrix - op.matrix.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(op.weights.minCoeff() > 0.0);
}

TEST_CASE("nystrom: zero weight gives the zero matrix") {
  const KernelSpec zero(0.25, SuppressionWeight::gaussian(1.0).scaled(0.0));
  const auto op = nystrom_discretize(zero, 8, 6.0);
  CHECK(op.matrix.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("nystrom: refusals and usage errors") {
  CHECK_THROWS_AS(nystrom_discretize(gaussian_kernel(0.6), 16, 6.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(nystrom_discretize(gaussian_kernel(0.25), 1, 6.0),
                  std::invalid_argument);
}

TEST_CASE("nystrom: squared Frobenius norm approaches the HS double integral") {
  const double oracle = gaussian_hs2_oracle();
  double prev_gap = -1.0;
  for (int n : {32, 64, 128}) {
    const auto op = nystrom_discretize(gaussian_kernel(0.25), n, 6.0);
    const double gap = std::abs(op.matrix.squaredNorm() - oracle);
    if (prev_gap > 0.0) CHECK(gap < 0.5 * prev_gap);
    prev_gap = gap;
  }
}

TEST_CASE("default k_max covers the weight") {
  const auto w = SuppressionWeight::gaussian(1.0);
  const double kmax = default_k_max(w);
  CHECK(w(kmax) <= 1e-8 * w(0.0) * (1.0 + 1e-9));
  CHECK(w(0.9 * kmax) > 1e-8 * w(0.0));
  CHECK_THROWS_AS(default_k_max(SuppressionWeight::unit()), std::invalid_argument);
}

TEST_CASE("spectrum: zero matrix and trace identity") {
  const KernelSpec zero(0.25, SuppressionWeight::gaussian(1.0).scaled(0.0));
  const auto rep = eigen_spectrum(nystrom_discretize(zero, 16, 6.0));
  CHECK(rep.eigenvalues.cwiseAbs().maxCoeff() == 0.0);
  CHECK(rep.trace_norm_estimate == 0.0);

  const auto op = nystrom_discretize(gaussian_kernel(0.25), 96, 6.0);
  const auto report = eigen_spectrum(op);
  CHECK(report.eigenvalues.sum() ==
        Approx(op.matrix.trace()).epsilon(1e-10));
  // eigenvalues arrive sorted by decreasing magnitude
  for (Eigen::Index i = 0; i + 1 < report.eigenvalues.size(); ++i)
    CHECK(std::abs(report.eigenvalues[i]) >= std::abs(report.eigenvalues[i + 1]));
  // Cauchy-Schwarz on the singular values
  CHECK(report.hs_norm_estimate * report.hs_norm_estimate <=
        report.trace_norm_estimate * report.trace_norm_estimate * (1.0 + 1e-12));
  CHECK(report.p_summability.at(1.0) == report.trace_norm_estimate);
}

TEST_CASE("spectrum: non-symmetric input is refused") {
  DiscretizedOperator op = nystrom_discretize(gaussian_kernel(0.25), 8, 6.0);
  op.matrix(0, 1) += 1e-3;
  CHECK_THROWS_AS(eigen_spectrum(op), std::invalid_argument);
}

TEST_CASE("trace norm stabilizes for the smooth exponentially suppressed kernel") {
  const KernelSpec smooth = gaussian_kernel(0.0);
  const auto r128 = eigen_spectrum(nystrom_discretize(smooth, 128, 6.0));
  const auto r256 = eigen_spectrum(nystrom_discretize(smooth, 256, 6.0));
  CHECK(std::abs(r256.trace_norm_estimate - r128.trace_norm_estimate) < 1e-8);
  // the separable kernel is rank one with eigenvalue int exp(-2k^2) dk
  CHECK(r256.eigenvalues[0] == Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-12));
}

TEST_CASE("modified laplacian: pinned values and suppression bound") {
  Eigen::VectorXd grid(3);
  grid << 0.0, 1.0, 2.0;
  const auto gauss = modified_laplacian_spectrum(SuppressionWeight::gaussian(1.0), grid);
  CHECK(gauss[0].second == 0.0);
  CHECK(gauss[1].second == Approx(std::exp(-1.0)).epsilon(1e-14));

  RegulatorParams p;
  p.beta = 1.3;
  p.eta = 0.0;
  Eigen::VectorXd wide(40);
  for (int i = 0; i < 40; ++i) wide[i] = 0.25 * i;
  for (const auto& [k, lam] : modified_laplacian_spectrum(p, wide))
    CHECK(lam <= k * k * (1.0 + 1e-12));
}

TEST_CASE("modified laplacian: infrared eigenvalues track k^2") {
  for (double gamma : {0.25, 1.0, 4.0}) {
    const auto w = SuppressionWeight::gaussian(gamma);
    const double k = 0.05 / std::sqrt(gamma);
    Eigen::VectorXd grid(1);
    grid << k;
    const auto lam = modified_laplacian_spectrum(w, grid)[0].second;
    CHECK(std::abs(lam / (k * k) - 1.0) < 0.01);
  }
}

TEST_CASE("spectral gap: closed-form agreement") {
  const auto g1 = spectral_gap(1.0);
  CHECK(g1.k_star == Approx(1.0).epsilon(1e-12));
  CHECK(g1.lambda_max == Approx(std::exp(-1.0)).epsilon(1e-12));

  const auto g4 = spectral_gap(4.0);
  CHECK(g4.k_star == Approx(0.5).epsilon(1e-12));
  CHECK(g4.lambda_max == Approx(0.09196986029286058).epsilon(1e-12));

  for (double gamma : {0.1, 1.0, 10.0}) {
    const auto g = spectral_gap(gamma);
    CHECK(g.k_star * std::sqrt(gamma) == Approx(1.0).epsilon(1e-10));
    CHECK(g.k_star * g.k_star * gamma == Approx(1.0).epsilon(1e-10));
    CHECK(g.lambda_max * gamma * M_E == Approx(1.0).epsilon(1e-10));
  }

  CHECK_THROWS_AS(spectral_gap(0.0), std::domain_error);
  CHECK_THROWS_AS(spectral_gap(-1.0), std::domain_error);
}

TEST_CASE("gauss-legendre rule integrates polynomials exactly") {
  const auto [nodes, weights] = gauss_legendre(5, 0.0, 1.0);
  double moment9 = 0.0;
  for (int i = 0; i < 5; ++i) moment9 += weights[i] * std::pow(nodes[i], 9);
  CHECK(moment9 == Approx(0.1).epsilon(1e-13));
  CHECK(weights.sum() == Approx(1.0).epsilon(1e-14));
}
