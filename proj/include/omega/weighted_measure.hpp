#pragma once

#include <Eigen/Core>

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "omega/quadrature.hpp"
#include "omega/regulator.hpp"

namespace omega {

/*
 * A function of momentum magnitude: a closed-form handle, or samples
 * interpolated with a monotone cubic (Fritsch-Carlson). Tail behaviour is
 * declared, not inferred: a sampled function continues below the first node
 * with its first value, and beyond the last node as
 * value_last * (k_last/k)^tail_exponent (tail_exponent = +inf truncates to
 * zero). Closed-form handles declare their large-k power directly; the
 * default -inf means faster-than-any-power decay.
 */
class SampledFunction {
 public:
  static SampledFunction analytic(
      std::function<double(double)> f, std::string description,
      double large_k_growth = -std::numeric_limits<double>::infinity());
  static SampledFunction sampled(
      Eigen::VectorXd nodes, Eigen::VectorXd values, std::string description,
      double tail_exponent = std::numeric_limits<double>::infinity());

  double operator()(double k) const;

  // Large-k power g with f(k) ~ k^g; -inf for super-polynomial decay.
  double large_k_growth() const { return growth_; }
  const std::string& description() const { return description_; }

  // Momentum beyond which the representation is tail-only (0 for analytic).
  double core_extent() const;

 private:
  SampledFunction() = default;

  std::function<double(double)> fn_;  // non-null in analytic mode
  Eigen::VectorXd nodes_, values_, slopes_;
  double tail_exponent_ = std::numeric_limits<double>::infinity();
  double growth_ = -std::numeric_limits<double>::infinity();
  std::string description_;
};

// Value of a weighted integral, or the verdict explaining why it has none.
using WeightedValue = std::variant<double, ConvergenceVerdict>;

// Total mass int w(k) d^dk of the weighted measure; alpha_growth = 0 case of
// regulated_loop_integral, divergent when eta = 0 and 2*beta <= dim.
LoopIntegral total_mass(const RegulatorParams& params, double tol);

// (int |f|^p w d^dk)^(1/p), p >= 1.
WeightedValue weighted_lp_norm(const SampledFunction& f, double p,
                               const SuppressionWeight& weight, int dim, double tol);
WeightedValue weighted_lp_norm(const SampledFunction& f, double p,
                               const RegulatorParams& params, double tol);

WeightedValue weighted_inner_product(const SampledFunction& f, const SampledFunction& g,
                                     const SuppressionWeight& weight, int dim, double tol);
WeightedValue weighted_inner_product(const SampledFunction& f, const SampledFunction& g,
                                     const RegulatorParams& params, double tol);

WeightedValue weighted_distance(const SampledFunction& f, const SampledFunction& g,
                                const SuppressionWeight& weight, int dim, double tol);
WeightedValue weighted_distance(const SampledFunction& f, const SampledFunction& g,
                                const RegulatorParams& params, double tol);

struct EmbeddingDiagnostics {
  double norm_l2 = 0.0;        // unweighted L2 norm; +inf when divergent
  double norm_weighted = 0.0;  // weighted L2 norm; +inf when divergent
  double ratio = 0.0;          // norm_weighted / norm_l2 (0 when norm_l2 is 0 or inf)
  std::map<double, double> tail_mass;  // cutoff K -> int_{|k|>K} |f|^2 d^dk, unweighted
};

// Norm pair, ratio and unweighted tail masses. Measures only; no claim
// about any embedding direction is made or implied.
EmbeddingDiagnostics embedding_diagnostics(const SampledFunction& f,
                                           const SuppressionWeight& weight, int dim,
                                           const std::vector<double>& cutoffs, double tol);
EmbeddingDiagnostics embedding_diagnostics(const SampledFunction& f,
                                           const RegulatorParams& params,
                                           const std::vector<double>& cutoffs, double tol);

}  // namespace omega
