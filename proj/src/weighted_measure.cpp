#include "omega/weighted_measure.hpp"

#include <algorithm>
#include <cmath>

namespace omega {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Fritsch-Carlson slopes: monotone on monotone data.
Eigen::VectorXd pchip_slopes(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const Eigen::Index n = x.size();
  Eigen::VectorXd m(n);
  if (n == 2) {
    const double d = (y[1] - y[0]) / (x[1] - x[0]);
    m[0] = m[1] = d;
    return m;
  }
  Eigen::VectorXd h(n - 1), d(n - 1);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    d[i] = (y[i + 1] - y[i]) / h[i];
  }
  m[0] = d[0];
  m[n - 1] = d[n - 2];
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    if (d[i - 1] == 0.0 || d[i] == 0.0 || (d[i - 1] > 0.0) != (d[i] > 0.0)) {
      m[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
    }
  }
  return m;
}

QuadratureOptions norm_options(double tol, double core_hint, double weight_scale) {
  if (!(tol > 0.0)) throw std::invalid_argument("weighted_measure: tol must be positive");
  QuadratureOptions opts;
  opts.abs_tol = tol;
  opts.rel_tol = std::min(tol, 1e-8);
  opts.tail_split = std::max(10.0 * weight_scale, 1.5 * core_hint);
  return opts;
}

double quadrature_value(const QuadratureResult& r, const char* what) {
  if (!r.converged)
    throw diagnostic_error(std::string(what) + ": quadrature did not meet tolerance");
  return r.value;
}

}  // namespace

SampledFunction SampledFunction::analytic(std::function<double(double)> f,
                                          std::string description,
                                          double large_k_growth) {
  if (!f) throw std::invalid_argument("SampledFunction::analytic: null function handle");
  SampledFunction s;
  s.fn_ = std::move(f);
  s.description_ = std::move(description);
  s.growth_ = large_k_growth;
  return s;
}

SampledFunction SampledFunction::sampled(Eigen::VectorXd nodes, Eigen::VectorXd values,
                                         std::string description, double tail_exponent) {
  if (nodes.size() < 2)
    throw std::invalid_argument("SampledFunction::sampled: need at least 2 nodes");
  if (nodes.size() != values.size())
    throw std::invalid_argument("SampledFunction::sampled: nodes/values size mismatch");
  if (!(nodes[0] >= 0.0))
    throw std::invalid_argument("SampledFunction::sampled: nodes must be nonnegative");
  for (Eigen::Index i = 0; i + 1 < nodes.size(); ++i)
    if (!(nodes[i] < nodes[i + 1]))
      throw std::invalid_argument("SampledFunction::sampled: nodes must be strictly increasing");
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i]))
      throw std::invalid_argument("SampledFunction::sampled: values must be finite");
  if (std::isnan(tail_exponent))
    throw std::invalid_argument("SampledFunction::sampled: tail exponent must not be NaN");

  SampledFunction s;
  s.slopes_ = pchip_slopes(nodes, values);
  s.nodes_ = std::move(nodes);
  s.values_ = std::move(values);
  s.description_ = std::move(description);
  s.tail_exponent_ = tail_exponent;
  s.growth_ = std::isinf(tail_exponent) ? -kInf : -tail_exponent;
  return s;
}

double SampledFunction::operator()(double k) const {
  if (fn_) return fn_(k);
  const Eigen::Index n = nodes_.size();
  if (k <= nodes_[0]) return values_[0];
  if (k >= nodes_[n - 1]) {
    if (std::isinf(tail_exponent_)) return 0.0;
    return values_[n - 1] * std::pow(nodes_[n - 1] / k, tail_exponent_);
  }
  const double* begin = nodes_.data();
  const Eigen::Index i =
      std::upper_bound(begin, begin + n, k) - begin - 1;  // nodes_[i] <= k < nodes_[i+1]
  const double h = nodes_[i + 1] - nodes_[i];
  const double t = (k - nodes_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2.0 * t3 - 3.0 * t2 + 1.0) * values_[i] + (t3 - 2.0 * t2 + t) * h * slopes_[i] +
         (-2.0 * t3 + 3.0 * t2) * values_[i + 1] + (t3 - t2) * h * slopes_[i + 1];
}

double SampledFunction::core_extent() const {
  return fn_ ? 0.0 : nodes_[nodes_.size() - 1];
}

LoopIntegral total_mass(const RegulatorParams& params, double tol) {
  return regulated_loop_integral(0.0, params, tol);
}

WeightedValue weighted_lp_norm(const SampledFunction& f, double p,
                               const SuppressionWeight& weight, int dim, double tol) {
  if (!(p >= 1.0))
    throw std::invalid_argument("weighted_lp_norm: p must be >= 1");
  ConvergenceVerdict verdict = classify_weighted(dim, p * f.large_k_growth(), weight);
  if (verdict.status == ConvergenceStatus::Divergent) return verdict;
  auto integrand = [&f, &weight, p](double k) {
    const double v = std::abs(f(k));
    if (v == 0.0) return 0.0;
    const double w = weight(k);
    if (w == 0.0) return 0.0;
    return std::pow(v, p) * w;
  };
  const auto opts = norm_options(tol, f.core_extent(), weight.scale());
  const QuadratureResult r = integrate_radial(integrand, dim, opts);
  return std::pow(std::max(quadrature_value(r, "weighted_lp_norm"), 0.0), 1.0 / p);
}

WeightedValue weighted_lp_norm(const SampledFunction& f, double p,
                               const RegulatorParams& params, double tol) {
  return weighted_lp_norm(f, p, SuppressionWeight::regulator(params), params.dim, tol);
}

WeightedValue weighted_inner_product(const SampledFunction& f, const SampledFunction& g,
                                     const SuppressionWeight& weight, int dim, double tol) {
  ConvergenceVerdict verdict =
      classify_weighted(dim, f.large_k_growth() + g.large_k_growth(), weight);
  if (verdict.status == ConvergenceStatus::Divergent) return verdict;
  auto integrand = [&f, &g, &weight](double k) {
    const double a = f(k);
    if (a == 0.0) return 0.0;
    const double b = g(k);
    if (b == 0.0) return 0.0;
    const double w = weight(k);
    if (w == 0.0) return 0.0;
    return a * b * w;
  };
  const auto opts =
      norm_options(tol, std::max(f.core_extent(), g.core_extent()), weight.scale());
  return quadrature_value(integrate_radial(integrand, dim, opts), "weighted_inner_product");
}

WeightedValue weighted_inner_product(const SampledFunction& f, const SampledFunction& g,
                                     const RegulatorParams& params, double tol) {
  return weighted_inner_product(f, g, SuppressionWeight::regulator(params), params.dim, tol);
}

WeightedValue weighted_distance(const SampledFunction& f, const SampledFunction& g,
                                const SuppressionWeight& weight, int dim, double tol) {
  ConvergenceVerdict verdict = classify_weighted(
      dim, 2.0 * std::max(f.large_k_growth(), g.large_k_growth()), weight);
  if (verdict.status == ConvergenceStatus::Divergent) return verdict;
  auto integrand = [&f, &g, &weight](double k) {
    const double d = f(k) - g(k);
    if (d == 0.0) return 0.0;
    const double w = weight(k);
    if (w == 0.0) return 0.0;
    return d * d * w;
  };
  const auto opts =
      norm_options(tol, std::max(f.core_extent(), g.core_extent()), weight.scale());
  return std::sqrt(
      std::max(quadrature_value(integrate_radial(integrand, dim, opts), "weighted_distance"),
               0.0));
}

WeightedValue weighted_distance(const SampledFunction& f, const SampledFunction& g,
                                const RegulatorParams& params, double tol) {
  return weighted_distance(f, g, SuppressionWeight::regulator(params), params.dim, tol);
}

EmbeddingDiagnostics embedding_diagnostics(const SampledFunction& f,
                                           const SuppressionWeight& weight, int dim,
                                           const std::vector<double>& cutoffs, double tol) {
  if (cutoffs.empty())
    throw std::invalid_argument("embedding_diagnostics: cutoff list is empty");
  for (size_t i = 0; i < cutoffs.size(); ++i) {
    if (!(cutoffs[i] > 0.0))
      throw std::invalid_argument("embedding_diagnostics: cutoffs must be positive");
    if (i > 0 && !(cutoffs[i] > cutoffs[i - 1]))
      throw std::invalid_argument("embedding_diagnostics: cutoffs must be increasing");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("embedding_diagnostics: tol must be positive");

  EmbeddingDiagnostics diag;
  const auto unit = SuppressionWeight::unit();

  WeightedValue wn = weighted_lp_norm(f, 2.0, weight, dim, tol);
  diag.norm_weighted = std::holds_alternative<double>(wn) ? std::get<double>(wn) : kInf;

  const bool l2_divergent =
      classify_weighted(dim, 2.0 * f.large_k_growth(), unit).status ==
      ConvergenceStatus::Divergent;
  if (l2_divergent) {
    diag.norm_l2 = kInf;
    diag.ratio = 0.0;
  } else {
    diag.norm_l2 = std::get<double>(weighted_lp_norm(f, 2.0, unit, dim, tol));
    diag.ratio = (diag.norm_l2 > 0.0 && std::isfinite(diag.norm_weighted))
                     ? diag.norm_weighted / diag.norm_l2
                     : 0.0;
  }

  for (double K : cutoffs) {
    if (l2_divergent) {
      diag.tail_mass[K] = kInf;
      continue;
    }
    auto integrand = [&f, dim](double k) {
      const double v = f(k);
      if (v == 0.0) return 0.0;
      return v * v * std::pow(k, dim - 1);
    };
    QuadratureOptions opts;
    opts.abs_tol = 1e-18;  // tail masses span many decades; drive by relative error
    opts.rel_tol = std::min(tol, 1e-9);
    opts.tail_split = std::max({2.0 * K, K + 10.0 * weight.scale(), 1.5 * f.core_extent()});
    const QuadratureResult r = integrate_line(integrand, K, kInf, opts);
    diag.tail_mass[K] = sphere_area(dim) * r.value;
  }
  return diag;
}

EmbeddingDiagnostics embedding_diagnostics(const SampledFunction& f,
                                           const RegulatorParams& params,
                                           const std::vector<double>& cutoffs, double tol) {
  return embedding_diagnostics(f, SuppressionWeight::regulator(params), params.dim,
                               cutoffs, tol);
}

}  // namespace omega
