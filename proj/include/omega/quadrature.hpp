#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>

#include "omega/regulator.hpp"

namespace omega {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int subdivisions = 0;
  bool converged = false;
};

enum class ConvergenceStatus { ConvergentPowerLaw, ConvergentExponential, Divergent };

std::string to_string(ConvergenceStatus s);

struct ConvergenceVerdict {
  ConvergenceStatus status = ConvergenceStatus::Divergent;
  std::string deciding_inequality;
  double margin = 0.0;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 10000;
  // Semi-infinite integrals only: where the compact core ends and the
  // rationally mapped tail k = split + t/(1-t) begins. <= lower selects a
  // default. Results must not depend on the split; regulated_loop_integral
  // cross-checks two splits and treats disagreement as a diagnostic failure.
  double tail_split = 0.0;
};

// Adaptive Gauss-Kronrod 7/15 on [lower, upper]; upper may be +inf.
// A non-finite integrand sample yields a failed result (NaN value,
// converged = false), never a crash.
QuadratureResult integrate_line(const std::function<double(double)>& f,
                                double lower, double upper,
                                const QuadratureOptions& opts = {});

// S_{d-1} * int_0^upper k^(dim-1) f(k) dk, S_{d-1} = 2 pi^(d/2) / Gamma(d/2).
QuadratureResult integrate_radial(const std::function<double(double)>& f, int dim,
                                  double tol,
                                  double upper = std::numeric_limits<double>::infinity());
QuadratureResult integrate_radial(const std::function<double(double)>& f, int dim,
                                  const QuadratureOptions& opts,
                                  double upper = std::numeric_limits<double>::infinity());

// Surface area of the unit sphere S^(d-1).
double sphere_area(int dim);

// Closed form of int_0^inf k^(dim-1) exp(-eta k^2) dk = eta^(-d/2) Gamma(d/2) / 2.
double gamma_moment_oracle(int dim, double eta);

// Large-k rule for integrands f ~ k^alpha_growth under the regulator weight:
// exponential damping (eta > 0) converges regardless of alpha_growth,
// otherwise convergence iff 2*beta > dim + alpha_growth (strict; the
// boundary case is the logarithmic divergence and is classified divergent).
ConvergenceVerdict classify_convergence(int dim, double alpha_growth,
                                        const RegulatorParams& params);

// Same rule extended to the demonstration weights: Gaussian weights always
// converge, the unit weight converges iff the integrand itself decays.
ConvergenceVerdict classify_weighted(int dim, double alpha_growth,
                                     const SuppressionWeight& weight);

using LoopIntegral = std::variant<QuadratureResult, ConvergenceVerdict>;

// Classify first; integrate w(k) k^alpha_growth over R^d only when the
// verdict is convergent, with a two-split tail consistency check.
LoopIntegral regulated_loop_integral(double alpha_growth,
                                     const RegulatorParams& params, double tol);
LoopIntegral regulated_loop_integral(double alpha_growth,
                                     const RegulatorParams& params,
                                     const QuadratureOptions& opts);

// Symbolic classification and numerical behaviour disagree: the classifier
// promised convergence but quadrature cannot meet tolerance, two tail splits
// disagree, or a singular-strip result is delta-sensitive.
class diagnostic_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace omega
