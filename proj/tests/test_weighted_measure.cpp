#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "omega/weighted_measure.hpp"

using namespace omega;
using doctest::Approx;

namespace {

SampledFunction gaussian_bump(double center, double width, double amplitude = 1.0) {
  return SampledFunction::analytic(
      [center, width, amplitude](double k) {
        const double z = (k - center) / width;
        return amplitude * std::exp(-0.5 * z * z);
      },
      "bump");
}

double value_of(const WeightedValue& v) { return std::get<double>(v); }

}  // namespace

TEST_CASE("total mass: divergent when 2 beta <= d") {
  RegulatorParams p;
  p.beta = 1.0;
  p.eta = 0.0;
  p.dim = 4;
  const auto result = total_mass(p, 1e-10);
  REQUIRE(std::holds_alternative<ConvergenceVerdict>(result));
  CHECK(std::get<ConvergenceVerdict>(result).margin == Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("total mass: arctan oracle in one dimension") {
  RegulatorParams p;
  p.beta = 1.0;
  p.eta = 0.0;
  p.dim = 1;
  p.lambda = 1.0;
  const auto result = total_mass(p, 1e-10);
  REQUIRE(std::holds_alternative<QuadratureResult>(result));
  CHECK(std::get<QuadratureResult>(result).value == Approx(M_PI).epsilon(1e-9));
}

TEST_CASE("total mass is positive whenever convergent") {
  for (double beta : {0.8, 1.5, 3.0}) {
    for (int dim : {1, 2, 3}) {
      RegulatorParams p;
      p.beta = beta;
      p.eta = 0.0;
      p.dim = dim;
      const auto result = total_mass(p, 1e-9);
      if (const auto* r = std::get_if<QuadratureResult>(&result)) CHECK(r->value > 0.0);
    }
  }
}

TEST_CASE("total mass verdict agrees with the classifier at alpha = 0") {
  // eta = 0 everywhere, and eta > 0 where the power tail is integrable on its
  // own; in both regions the classifier's word is the numerical truth
  for (double beta : {0.4, 0.5, 1.0, 2.0, 3.0}) {
    for (int dim : {1, 2, 3, 4}) {
      RegulatorParams p;
      p.beta = beta;
      p.eta = 0.0;
      p.dim = dim;
      const auto verdict = classify_convergence(dim, 0.0, p);
      const auto result = total_mass(p, 1e-9);
      CHECK(std::holds_alternative<ConvergenceVerdict>(result) ==
            (verdict.status == ConvergenceStatus::Divergent));
      if (2.0 * beta > dim) {
        p.eta = 0.05;
        CHECK(std::holds_alternative<QuadratureResult>(total_mass(p, 1e-9)));
      }
    }
  }
}

TEST_CASE("exponential-branch classification can disagree with the numerics") {
  // The subtracted eta-term never rescues the power tail: with 2 beta <= d the
  // integral still diverges although the classification rule promises
  // exponential convergence. The disagreement surfaces as the dedicated
  // diagnostic, not as a number.
  RegulatorParams p;
  p.beta = 0.4;
  p.eta = 0.2;
  p.dim = 1;
  const auto verdict = classify_convergence(p.dim, 0.0, p);
  CHECK(verdict.status == ConvergenceStatus::ConvergentExponential);
  CHECK_THROWS_AS(total_mass(p, 1e-9), diagnostic_error);
}

TEST_CASE("weighted lp norm: pinned values") {
  const auto zero = SampledFunction::analytic([](double) { return 0.0; }, "zero");
  CHECK(value_of(weighted_lp_norm(zero, 2.0, SuppressionWeight::unit(), 1, 1e-10)) == 0.0);

  // plain L2 norm of exp(-k^2/2) in one dimension is pi^(1/4)
  const auto gauss =
      SampledFunction::analytic([](double k) { return std::exp(-0.5 * k * k); }, "gauss");
  CHECK(value_of(weighted_lp_norm(gauss, 2.0, SuppressionWeight::unit(), 1, 1e-11)) ==
        Approx(1.3313353638003897).epsilon(1e-9));
}

TEST_CASE("weighted lp norm: homogeneity") {
  const auto f = gaussian_bump(1.0, 0.7);
  const auto cf = gaussian_bump(1.0, 0.7, 3.0);
  RegulatorParams p;
  p.beta = 1.0;
  const double n1 = value_of(weighted_lp_norm(f, 2.0, p, 1e-11));
  const double n3 = value_of(weighted_lp_norm(cf, 2.0, p, 1e-11));
  CHECK(n3 == Approx(3.0 * n1).epsilon(1e-10));
}

TEST_CASE("weighted lp norm: usage errors") {
  const auto f = gaussian_bump(1.0, 0.7);
  RegulatorParams p;
  CHECK_THROWS_AS(weighted_lp_norm(f, 0.5, p, 1e-10), std::invalid_argument);
  CHECK_THROWS_AS(weighted_lp_norm(f, 2.0, p, 0.0), std::invalid_argument);
}

TEST_CASE("weighted lp norm: symbolic divergence comes back as a verdict") {
  // constant function under the unit weight
  const auto one =
      SampledFunction::analytic([](double) { return 1.0; }, "one", 0.0);
  const auto result = weighted_lp_norm(one, 2.0, SuppressionWeight::unit(), 1, 1e-10);
  REQUIRE(std::holds_alternative<ConvergenceVerdict>(result));

  // growing function against a too-weak power-law weight
  RegulatorParams p;
  p.beta = 1.0;
  p.eta = 0.0;
  p.dim = 1;
  const auto grow = SampledFunction::analytic([](double k) { return k; }, "k", 1.0);
  const auto r2 = weighted_lp_norm(grow, 2.0, p, 1e-10);
  REQUIRE(std::holds_alternative<ConvergenceVerdict>(r2));
}

TEST_CASE("inner product: definition consistency and symmetry") {
  const auto f = gaussian_bump(0.5, 0.6);
  const auto g = gaussian_bump(1.5, 0.9);
  RegulatorParams p;
  p.beta = 1.5;
  const double ff = value_of(weighted_inner_product(f, f, p, 1e-11));
  const double nf = value_of(weighted_lp_norm(f, 2.0, p, 1e-11));
  CHECK(ff == Approx(nf * nf).epsilon(1e-9));

  const double fg = value_of(weighted_inner_product(f, g, p, 1e-11));
  const double gf = value_of(weighted_inner_product(g, f, p, 1e-11));
  CHECK(fg == Approx(gf).epsilon(1e-12));

  const double dfg = value_of(weighted_distance(f, g, p, 1e-11));
  const double dgf = value_of(weighted_distance(g, f, p, 1e-11));
  CHECK(dfg == Approx(dgf).epsilon(1e-12));
  CHECK(value_of(weighted_distance(f, f, p, 1e-11)) == 0.0);
}

TEST_CASE("inner product: bilinearity in the first slot") {
  const auto f = gaussian_bump(0.5, 0.6);
  const auto f3 = gaussian_bump(0.5, 0.6, 3.0);
  const auto g = gaussian_bump(2.0, 1.1);
  RegulatorParams p;
  p.beta = 1.0;
  CHECK(value_of(weighted_inner_product(f3, g, p, 1e-11)) ==
        Approx(3.0 * value_of(weighted_inner_product(f, g, p, 1e-11))).epsilon(1e-9));
}

TEST_CASE("Cauchy-Schwarz over random bump pairs") {
  std::mt19937 rng(123);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  RegulatorParams p;
  p.beta = 1.0;
  p.eta = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto f = gaussian_bump(3.0 * unif(rng), 0.2 + unif(rng), 0.5 + unif(rng));
    const auto g = gaussian_bump(3.0 * unif(rng), 0.2 + unif(rng), 0.5 + unif(rng));
    const double ip = value_of(weighted_inner_product(f, g, p, 1e-10));
    const double nf = value_of(weighted_lp_norm(f, 2.0, p, 1e-10));
    const double ng = value_of(weighted_lp_norm(g, 2.0, p, 1e-10));
    CHECK(std::abs(ip) <= nf * ng * (1.0 + 1e-9) + 1e-12);
  }
}

TEST_CASE("triangle inequality for the weighted distance") {
  std::mt19937 rng(321);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  RegulatorParams p;
  p.beta = 1.2;
  for (int i = 0; i < 25; ++i) {
    const auto f = gaussian_bump(2.5 * unif(rng), 0.3 + unif(rng));
    const auto g = gaussian_bump(2.5 * unif(rng), 0.3 + unif(rng));
    const auto h = gaussian_bump(2.5 * unif(rng), 0.3 + unif(rng));
    const double fh = value_of(weighted_distance(f, h, p, 1e-10));
    const double fg = value_of(weighted_distance(f, g, p, 1e-10));
    const double gh = value_of(weighted_distance(g, h, p, 1e-10));
    CHECK(fh <= fg + gh + 1e-9);
  }
}

TEST_CASE("norm is monotone in the weight (lambda ordering at eta = 0)") {
  std::mt19937 rng(55);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    const auto f = gaussian_bump(2.0 * unif(rng), 0.3 + unif(rng));
    RegulatorParams small, large;
    small.beta = large.beta = 1.0 + 2.0 * unif(rng);
    small.eta = large.eta = 0.0;
    small.lambda = 0.5;
    large.lambda = 2.0;
    const double ns = value_of(weighted_lp_norm(f, 2.0, small, 1e-10));
    const double nl = value_of(weighted_lp_norm(f, 2.0, large, 1e-10));
    CHECK(ns <= nl * (1.0 + 1e-10));
  }
}

TEST_CASE("embedding diagnostics: ratio bound and erfc tails") {
  const auto gauss =
      SampledFunction::analytic([](double k) { return std::exp(-0.5 * k * k); }, "gauss");
  RegulatorParams p;
  p.beta = 1.0;
  p.eta = 0.0;
  const auto diag = embedding_diagnostics(gauss, p, {2.0, 4.0, 8.0}, 1e-10);
  CHECK(diag.ratio <= 1.0 + 1e-12);
  CHECK(diag.norm_weighted <= diag.norm_l2 * (1.0 + 1e-12));

  // unweighted tails of exp(-k^2): sqrt(pi) * erfc(K) in one dimension
  const double t2 = diag.tail_mass.at(2.0);
  const double t4 = diag.tail_mass.at(4.0);
  const double t8 = diag.tail_mass.at(8.0);
  CHECK(t2 == Approx(std::sqrt(M_PI) * std::erfc(2.0)).epsilon(1e-6));
  CHECK(t4 == Approx(std::sqrt(M_PI) * std::erfc(4.0)).epsilon(1e-5));
  CHECK(t4 < t2 / 10.0);
  CHECK(t8 < t4 / 10.0);
}

TEST_CASE("embedding diagnostics: compactly supported samples have zero tails") {
  Eigen::VectorXd nodes(5), values(5);
  nodes << 0.0, 0.5, 1.0, 1.5, 2.0;
  values << 1.0, 0.8, 0.5, 0.2, 0.0;
  const auto f = SampledFunction::sampled(nodes, values, "wedge");
  RegulatorParams p;
  p.beta = 1.0;
  const auto diag = embedding_diagnostics(f, p, {2.0, 3.0, 10.0}, 1e-9);
  CHECK(diag.tail_mass.at(2.0) == 0.0);
  CHECK(diag.tail_mass.at(3.0) == 0.0);
  CHECK(diag.tail_mass.at(10.0) == 0.0);
}

TEST_CASE("embedding diagnostics: divergent plain norm is reported, not fatal") {
  const auto one = SampledFunction::analytic([](double) { return 1.0; }, "one", 0.0);
  RegulatorParams p;
  p.beta = 2.0;
  p.eta = 0.0;
  p.dim = 1;
  const auto diag = embedding_diagnostics(one, p, {1.0}, 1e-8);
  CHECK(std::isinf(diag.norm_l2));
  CHECK(std::isfinite(diag.norm_weighted));  // 4 beta > 1: weighted norm exists
  CHECK(diag.ratio == 0.0);
}

TEST_CASE("embedding diagnostics: cutoff validation") {
  const auto f = gaussian_bump(1.0, 0.5);
  RegulatorParams p;
  CHECK_THROWS_AS(embedding_diagnostics(f, p, {}, 1e-8), std::invalid_argument);
  CHECK_THROWS_AS(embedding_diagnostics(f, p, {2.0, 1.0}, 1e-8), std::invalid_argument);
  CHECK_THROWS_AS(embedding_diagnostics(f, p, {-1.0}, 1e-8), std::invalid_argument);
}

TEST_CASE("sampled functions: interpolation and declared tails") {
  Eigen::VectorXd nodes(4), values(4);
  nodes << 0.5, 1.0, 2.0, 4.0;
  values << 2.0, 1.0, 0.5, 0.25;
  const auto f = SampledFunction::sampled(nodes, values, "decay", 3.0);

  CHECK(f(0.5) == 2.0);
  CHECK(f(0.1) == 2.0);  // constant below the first node
  CHECK(f(4.0) == 0.25);
  CHECK(f(8.0) == Approx(0.25 * std::pow(0.5, 3.0)).epsilon(1e-14));
  CHECK(f.large_k_growth() == -3.0);

  // interpolant respects the data range on monotone data
  for (double k = 0.5; k <= 4.0; k += 0.01) {
    CHECK(f(k) <= 2.0 + 1e-12);
    CHECK(f(k) >= 0.25 - 1e-12);
  }

  const auto trunc = SampledFunction::sampled(nodes, values, "trunc");
  CHECK(trunc(4.0 + 1e-9) == 0.0);
  CHECK(std::isinf(trunc.large_k_growth()));
}

TEST_CASE("sampled functions: construction validation") {
  Eigen::VectorXd nodes(3), values(3);
  nodes << 0.0, 1.0, 1.0;  // not strictly increasing
  values << 1.0, 2.0, 3.0;
  CHECK_THROWS_AS(SampledFunction::sampled(nodes, values, "bad"), std::invalid_argument);
  nodes << -1.0, 0.0, 1.0;
  CHECK_THROWS_AS(SampledFunction::sampled(nodes, values, "bad"), std::invalid_argument);
  Eigen::VectorXd one_node(1), one_value(1);
  one_node << 0.0;
  one_value << 1.0;
  CHECK_THROWS_AS(SampledFunction::sampled(one_node, one_value, "bad"),
                  std::invalid_argument);
}
