#include "omega/operators.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <optional>

namespace omega {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kLineDim = 1;  // operator domain is the one-dimensional line

// Divergence gates for the squared-kernel double integral: integrable
// diagonal (2 alpha < d) and square-integrable weight.
std::optional<ConvergenceVerdict> hs_gate(const KernelSpec& kernel) {
  const double s = 2.0 * kernel.alpha_kernel;
  if (s >= kLineDim)
    return ConvergenceVerdict{ConvergenceStatus::Divergent, "2*alpha_kernel < d",
                              kLineDim - s};
  switch (kernel.weight.kind()) {
    case SuppressionWeight::Kind::Gaussian:
      return std::nullopt;
    case SuppressionWeight::Kind::Unit:
      return ConvergenceVerdict{ConvergenceStatus::Divergent,
                                "weight must be square-integrable", -kInf};
    case SuppressionWeight::Kind::Regulator: {
      const auto& p = kernel.weight.params();
      if (p.eta > 0.0) return std::nullopt;
      const double margin = 4.0 * p.beta - kLineDim;
      if (margin > 0.0) return std::nullopt;
      return ConvergenceVerdict{ConvergenceStatus::Divergent, "4*beta > d", margin};
    }
  }
  return std::nullopt;
}

double weight_on_line(const SuppressionWeight& w, double x) { return w(std::abs(x)); }

}  // namespace

KernelSpec::KernelSpec(double alpha, SuppressionWeight w)
    : alpha_kernel(alpha), weight(std::move(w)) {
  validate();
}

KernelSpec::KernelSpec(double alpha, const RegulatorParams& params)
    : KernelSpec(alpha, SuppressionWeight::regulator(params)) {}

void KernelSpec::validate() const {
  if (!(alpha_kernel >= 0.0) || !std::isfinite(alpha_kernel))
    throw std::invalid_argument("KernelSpec: alpha_kernel must be a nonnegative real");
}

std::variant<QuadratureResult, ConvergenceVerdict> hs_norm_direct(
    const KernelSpec& kernel, const HsNormOptions& opts) {
  kernel.validate();
  if (!(opts.tol > 0.0)) throw std::invalid_argument("hs_norm_direct: tol must be positive");
  if (!(opts.exclusion_delta_rel > 0.0) || opts.exclusion_delta_rel >= 1.0)
    throw std::invalid_argument("hs_norm_direct: exclusion band must be in (0,1) x scale");
  if (auto gate = hs_gate(kernel)) return *gate;

  const SuppressionWeight& w = kernel.weight;
  const double scale = w.scale();

  if (kernel.alpha_kernel == 0.0) {
    // smooth separable kernel: the double integral factorizes into (int w^2)^2
    QuadratureOptions o;
    o.abs_tol = std::min(opts.tol, 1e-12);
    o.rel_tol = 1e-10;
    o.tail_split = 5.0 * scale;
    const QuadratureResult line = integrate_line(
        [&w](double k) {
          const double v = w(k);
          return v == 0.0 ? 0.0 : v * v;
        },
        0.0, kInf, o);
    const double full = 2.0 * line.value;  // even weight: both half-lines
    QuadratureResult out;
    out.value = full * full;
    out.abs_error_estimate = 4.0 * std::abs(full) * line.abs_error_estimate;
    out.subdivisions = line.subdivisions;
    out.converged = line.converged;
    return out;
  }

  const double s = 2.0 * kernel.alpha_kernel;

  // Rotated coordinates u = (k-k')/sqrt2, v = (k+k')/sqrt2: the off-band part
  // is 2 int_{delta/sqrt2}^inf (sqrt2 u)^(-s) G(u) du with
  // G(u) = 2 int_0^inf w((v+u)/sqrt2)^2 w((v-u)/sqrt2)^2 dv, and the excluded
  // band carries the local power-law mass int w^4 * 2 delta^(1-s)/(1-s).
  QuadratureOptions inner_opts;
  inner_opts.abs_tol = std::max(1e-14, 1e-4 * opts.tol);
  inner_opts.rel_tol = 1e-10;
  inner_opts.tail_split = 4.0 * scale;
  auto G = [&w, &inner_opts](double u) {
    auto f = [&w, u](double v) {
      const double a = weight_on_line(w, (v + u) * M_SQRT1_2);
      if (a == 0.0) return 0.0;
      const double b = weight_on_line(w, (v - u) * M_SQRT1_2);
      if (b == 0.0) return 0.0;
      return a * a * b * b;
    };
    return 2.0 * integrate_line(f, 0.0, kInf, inner_opts).value;
  };

  QuadratureOptions w4_opts = inner_opts;
  const double int_w4 =
      2.0 * integrate_line(
                [&w](double k) {
                  const double v = w(k);
                  if (v == 0.0) return 0.0;
                  const double v2 = v * v;
                  return v2 * v2;
                },
                0.0, kInf, w4_opts)
                .value;

  auto at_delta = [&](double delta) {
    auto outer = [&](double u) {
      const double g = G(u);
      if (g == 0.0) return 0.0;
      return 2.0 * std::pow(M_SQRT2 * u, -s) * g;
    };
    QuadratureOptions o;
    o.abs_tol = 0.1 * opts.tol;
    o.rel_tol = 1e-9;
    o.tail_split = 4.0 * scale;
    QuadratureResult r = integrate_line(outer, delta * M_SQRT1_2, kInf, o);
    r.value += int_w4 * 2.0 * std::pow(delta, 1.0 - s) / (1.0 - s);
    return r;
  };

  const double delta = opts.exclusion_delta_rel * scale;
  const QuadratureResult coarse = at_delta(delta);
  const QuadratureResult fine = at_delta(0.5 * delta);
  const double band_gap = std::abs(coarse.value - fine.value);
  if (opts.delta_sensitivity_check &&
      band_gap > opts.tol * std::max(1.0, std::abs(fine.value)))
    throw diagnostic_error(
        "hs_norm_direct: excluded-band results at delta and delta/2 differ beyond "
        "tolerance; shrink exclusion_delta_rel");

  QuadratureResult out = fine;
  out.abs_error_estimate += band_gap;
  out.subdivisions += coarse.subdivisions;
  return out;
}

std::variant<QuadratureResult, ConvergenceVerdict> hs_norm_direct(
    const KernelSpec& kernel, double tol) {
  HsNormOptions opts;
  opts.tol = tol;
  return hs_norm_direct(kernel, opts);
}

double default_k_max(const SuppressionWeight& weight, double coverage) {
  if (!(coverage > 0.0) || coverage >= 1.0)
    throw std::invalid_argument("default_k_max: coverage must be in (0,1)");
  const double w0 = weight(0.0);
  if (!(w0 > 0.0))
    throw std::invalid_argument("default_k_max: weight vanishes at the origin");
  const double target = coverage * w0;
  double hi = weight.scale();
  int grow = 0;
  while (weight(hi) >= target) {
    hi *= 2.0;
    if (++grow > 200)
      throw std::invalid_argument("default_k_max: weight does not decay below coverage");
  }
  double lo = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (weight(mid) >= target ? lo : hi) = mid;
  }
  return hi;
}

DiscretizedOperator nystrom_discretize(const KernelSpec& kernel, int n, double k_max) {
  kernel.validate();
  if (n < 2) throw std::invalid_argument("nystrom_discretize: need at least 2 nodes");
  if (auto gate = hs_gate(kernel))
    throw std::invalid_argument("nystrom_discretize: kernel divergent by the rule \"" +
                                gate->deciding_inequality + "\"");
  if (!(k_max > 0.0)) k_max = default_k_max(kernel.weight);

  const SuppressionWeight& w = kernel.weight;
  const double alpha = kernel.alpha_kernel;

  DiscretizedOperator op;
  Eigen::VectorXd wl(n);

  if (alpha == 0.0) {
    auto [x, q] = gauss_legendre(n, -k_max, k_max);
    op.nodes = std::move(x);
    op.weights = std::move(q);
  } else {
    const double h = 2.0 * k_max / n;
    op.nodes.resize(n);
    op.weights = Eigen::VectorXd::Constant(n, h);
    for (int i = 0; i < n; ++i) op.nodes[i] = -k_max + (i + 0.5) * h;
  }
  for (int i = 0; i < n; ++i) wl[i] = weight_on_line(w, op.nodes[i]);

  op.matrix.resize(n, n);
  const Eigen::VectorXd sq = op.weights.cwiseSqrt();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double kij = wl[i] * wl[j];
      if (alpha != 0.0) kij /= std::pow(std::abs(op.nodes[i] - op.nodes[j]), alpha);
      const double m = sq[i] * kij * sq[j];
      op.matrix(i, j) = m;
      op.matrix(j, i) = m;
    }
    double kii = wl[i] * wl[i];
    if (alpha != 0.0) {
      const double h = op.weights[i];
      kii *= std::sqrt(-2.0 * std::riemann_zeta(2.0 * alpha)) * std::pow(h, -alpha);
    }
    op.matrix(i, i) = op.weights[i] * kii;
  }
  return op;
}

SpectrumReport eigen_spectrum(const DiscretizedOperator& op) {
  const Eigen::Index n = op.matrix.rows();
  if (n == 0 || op.matrix.cols() != n)
    throw std::invalid_argument("eigen_spectrum: matrix must be square and nonempty");
  if (op.nodes.size() != n || op.weights.size() != n)
    throw std::invalid_argument("eigen_spectrum: nodes/weights/matrix sizes disagree");
  const double scale = op.matrix.cwiseAbs().maxCoeff();
  const double asym = (op.matrix - op.matrix.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(scale, std::numeric_limits<double>::min()))
    throw std::invalid_argument("eigen_spectrum: matrix is not symmetric to 1e-12 relative");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.matrix,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigen_spectrum: eigendecomposition failed");

  std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end(),
            [](double a, double b) { return std::abs(a) > std::abs(b); });

  SpectrumReport report;
  report.eigenvalues = Eigen::Map<const Eigen::VectorXd>(ev.data(), n);
  double sum_abs = 0.0, sum_sq = 0.0, sum_half = 0.0;
  for (double lam : ev) {
    const double a = std::abs(lam);
    sum_abs += a;
    sum_sq += a * a;
    sum_half += std::sqrt(a);
  }
  report.trace_norm_estimate = sum_abs;
  report.hs_norm_estimate = std::sqrt(sum_sq);
  report.p_summability[0.5] = sum_half;
  report.p_summability[1.0] = sum_abs;
  report.p_summability[2.0] = sum_sq;
  return report;
}

std::vector<std::pair<double, double>> modified_laplacian_spectrum(
    const SuppressionWeight& weight, const Eigen::VectorXd& k_grid) {
  if (k_grid.size() == 0)
    throw std::invalid_argument("modified_laplacian_spectrum: momentum grid is empty");
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<size_t>(k_grid.size()));
  for (Eigen::Index i = 0; i < k_grid.size(); ++i) {
    const double k = k_grid[i];
    if (!(k >= 0.0))
      throw std::invalid_argument("modified_laplacian_spectrum: momenta must be nonnegative");
    out.emplace_back(k, weight(k) * k * k);
  }
  return out;
}

std::vector<std::pair<double, double>> modified_laplacian_spectrum(
    const RegulatorParams& params, const Eigen::VectorXd& k_grid) {
  return modified_laplacian_spectrum(SuppressionWeight::regulator(params), k_grid);
}

SpectralGap spectral_gap(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::domain_error("spectral_gap: gamma must be positive");
  auto lam = [gamma](double k) { return k * k * std::exp(-gamma * k * k); };

  // golden-section bracket on [0, 3/sqrt(gamma)]
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = 0.0, b = 3.0 / std::sqrt(gamma);
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = lam(c), fd = lam(d);
  while (b - a > 1e-8 * b) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = lam(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = lam(d);
    }
  }

  // Newton polish on the stationarity factor 1 - gamma k^2 = 0
  double k = 0.5 * (a + b);
  for (int i = 0; i < 60; ++i) {
    const double step = (1.0 - gamma * k * k) / (2.0 * gamma * k);
    k += step;
    if (std::abs(step) <= 1e-16 * k) break;
  }

  const double k_closed = 1.0 / std::sqrt(gamma);
  if (std::abs(k - k_closed) > 1e-9 * k_closed)
    throw diagnostic_error("spectral_gap: numeric maximizer disagrees with closed form");

  return SpectralGap{k, lam(k)};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n, double lo, double hi) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  if (!(lo < hi)) throw std::invalid_argument("gauss_legendre: bounds out of order");

  // Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix, weights
  // come from the first eigenvector components.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int j = 1; j < n; ++j) {
    const double b = j / std::sqrt(4.0 * j * j - 1.0);
    jacobi(j, j - 1) = b;
    jacobi(j - 1, j) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("gauss_legendre: Jacobi eigendecomposition failed");

  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  Eigen::VectorXd nodes(n), weights(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = mid + half * solver.eigenvalues()[i];
    const double v0 = solver.eigenvectors()(0, i);
    weights[i] = 2.0 * v0 * v0 * half;
  }
  return {std::move(nodes), std::move(weights)};
}

}  // namespace omega
