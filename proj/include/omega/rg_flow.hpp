#pragma once

#include <variant>
#include <vector>

#include "omega/quadrature.hpp"
#include "omega/regulator.hpp"

namespace omega {

// Exact scale derivative lambda * dw/dlambda of the subtracted-convention
// suppression function:
//   2 beta u/(1+u)^2 - (2 eta k^2 / (lambda^2 eps(k^2))) exp(-k^2/lambda^2),
// u = (k^2/lambda^2)^beta.
double domega_dlambda_analytic(double k, const RegulatorParams& p);

// Printed variant of the scale derivative, evaluated exactly as typeset:
//   -2 beta (k/lambda)^(2 beta) lambda / (1 + (k/lambda)^(2 beta))^2
//   - 2 eta k^2 exp(-k^2/lambda^2) / (eps(k^2) lambda).
// It disagrees with the exact derivative (sign of the first term, a stray
// lambda factor); derivative_discrepancy quantifies the gap.
double domega_dlambda_paper(double k, const RegulatorParams& p);

struct DerivativeDiscrepancy {
  double analytic = 0.0;
  double printed = 0.0;
  double abs_difference = 0.0;
  bool sign_flip = false;
};

DerivativeDiscrepancy derivative_discrepancy(double k, const RegulatorParams& p);

// Curvature-flow proxy -4 beta^2 k^(4 beta - 2) / lambda^3, evaluated as
// printed; negative for every positive input.
double ricci_flow_eval(double k, const RegulatorParams& p);

struct FlowSample {
  double lambda = 0.0;
  double omega = 0.0;
  double domega_dlog_lambda = 0.0;  // lambda * dw/dlambda (exact)
  double ricci_proxy = 0.0;
};

struct FlowTrajectory {
  std::vector<FlowSample> samples;   // log-spaced in lambda, endpoints included
  double integrated_change = 0.0;    // int (dw/dlambda) dlambda along the samples
  double endpoint_change = 0.0;      // w(lambda_end) - w(lambda_start)
};

// Samples w, its exact log-derivative and the curvature proxy along a
// log-spaced lambda trajectory, and integrates the derivative (fourth-order
// composite rule) so the endpoint difference can be checked against it.
FlowTrajectory flow_trajectory(double k, const RegulatorParams& p,
                               double lambda_start, double lambda_end, int steps);

// ln(2 pi) - ln(1 - w(k)); 1 - w is evaluated in the cancellation-free form
// u/(1+u) + eta exp(-k^2/lambda^2)/eps.
double log_partition_integrand(double k, const RegulatorParams& p);

struct PartitionResult {
  // Normalization-subtracted log partition integral,
  //   -(1/2) S_{d-1} int_0^K k^(d-1) ln(1 - w(k)) dk.
  // The weight-independent ln(2 pi) part grows with the cutoff volume and is
  // reported separately; their sum is the bare integral.
  double ln_z_density = 0.0;
  double free_log_volume = 0.0;  // (1/2) ln(2 pi) * vol_d(K)
  double uv_cutoff = 0.0;
  double integrand_min_argument = 0.0;  // min of 1 - w over [0, K]
};

struct IllDefinedGaussian {
  double offending_k = 0.0;
  double one_minus_omega = 0.0;
};

// Computes the radial reduction of the log partition integral over
// [0, uv_cutoff]; refuses with IllDefinedGaussian when 1 - w is not strictly
// positive on the range (eta = 0 pins 1 - w(0) = 0).
std::variant<PartitionResult, IllDefinedGaussian> log_partition(
    const RegulatorParams& p, double uv_cutoff, double tol);

}  // namespace omega
