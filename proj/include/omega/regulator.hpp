#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace omega {

/*
 * Suppression function of momentum magnitude k at cutoff scale lambda:
 *
 *   w(k) = 1 / (1 + (k^2/lambda^2)^beta)  -  eta * exp(-k^2/lambda^2) / eps(k^2)
 *
 * with the canonical transition profile eps(k2) = 1 / (1 + (k2/k_c^2)^alpha_eps).
 * The subtracted convention is used throughout; the evaluator never clamps,
 * so parameter sets that push w outside (0,1] are observable.
 */
struct RegulatorParams {
  double beta = 1.0;       // power-law exponent, > 0
  double eta = 0.0;        // exponential damping weight, >= 0
  double alpha_eps = 1.0;  // transition exponent of eps, > 0
  double k_c = 1.0;        // transition scale of eps, > 0
  double lambda = 1.0;     // cutoff scale, > 0
  int dim = 1;             // spatial dimension, >= 1

  void validate() const;  // throws std::invalid_argument

  // Strict UV power-law damping condition 2*beta > dim/2.
  bool uv_power_damping() const { return 2.0 * beta > 0.5 * dim; }
};

// Transition profile eps(k2) = 1/(1 + (k2/k_c^2)^alpha_eps), k2 = k squared.
double epsilon_eval(double k2, const RegulatorParams& p);

// w(k); see RegulatorParams.
double omega_eval(double k, const RegulatorParams& p);

// Large-k power-law asymptote (lambda^2/k^2)^beta; undefined at k = 0.
double omega_uv_asymptote(double k, const RegulatorParams& p);

enum class Regime { IR, Transition, UV };

// Reporting convention: IR for k < lambda/10, UV for k > 10*lambda.
Regime classify_regime(double k, const RegulatorParams& p);
std::string to_string(Regime r);

// Margin of the positivity inequality at one momentum,
//   eps(k^2)/(1 + (k^2/lambda^2)^beta) - eta*exp(-k^2/lambda^2).
// omega_eval(k) = margin/eps(k^2), so w(k) > 0 iff the margin is positive.
double admissibility_margin(double k, const RegulatorParams& p);

struct AdmissibilityReport {
  bool holds = false;    // true iff margin >= 0 at every grid point
  double worst_k = 0.0;  // grid point with the smallest margin
  double margin = 0.0;   // minimum margin over the grid
};

AdmissibilityReport check_admissibility(const RegulatorParams& p,
                                        const Eigen::VectorXd& grid);

// {0} followed by n-1 log-spaced momenta covering [1e-6, 1e+6] * lambda.
Eigen::VectorXd admissibility_grid(const RegulatorParams& p, int n = 1000);

/*
 * Pointwise weight profile on [0, inf). Three families: the regulator
 * itself, the Gaussian demonstration profile exp(-gamma k^2), and the unit
 * weight. An amplitude factor rescales the profile; it is how test kernels
 * exercise homogeneity (and amplitude 0 yields the zero weight).
 */
class SuppressionWeight {
 public:
  enum class Kind { Regulator, Gaussian, Unit };

  static SuppressionWeight regulator(const RegulatorParams& p);
  static SuppressionWeight gaussian(double gamma);
  static SuppressionWeight unit();

  double operator()(double k) const;
  SuppressionWeight scaled(double factor) const;

  Kind kind() const { return kind_; }
  double amplitude() const { return amplitude_; }
  double gamma() const;                   // Gaussian only
  const RegulatorParams& params() const;  // Regulator only

  // Characteristic width: lambda, 1/sqrt(gamma), or 1.
  double scale() const;

 private:
  SuppressionWeight() = default;

  Kind kind_ = Kind::Unit;
  double amplitude_ = 1.0;
  double gamma_ = 1.0;
  RegulatorParams params_{};
};

}  // namespace omega
