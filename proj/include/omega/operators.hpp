#pragma once

#include <Eigen/Core>

#include <map>
#include <utility>
#include <variant>
#include <vector>

#include "omega/quadrature.hpp"
#include "omega/regulator.hpp"

namespace omega {

/*
 * Integral kernel K(k,k') = w(k) w(k') / |k-k'|^alpha_kernel on the
 * one-dimensional momentum line (the weight profile is applied to |k|).
 * alpha_kernel = 0 selects the smooth separable kernel w(k) w(k');
 * 0 < alpha_kernel < 1/2 is the weakly singular regime in which the squared
 * kernel is still integrable across the diagonal.
 */
struct KernelSpec {
  double alpha_kernel = 0.0;
  SuppressionWeight weight = SuppressionWeight::unit();

  KernelSpec(double alpha, SuppressionWeight w);
  KernelSpec(double alpha, const RegulatorParams& params);
  void validate() const;
};

struct HsNormOptions {
  double tol = 1e-6;
  // Width of the excluded diagonal band, relative to the weight scale. The
  // band is patched with the local power-law estimate and the result is
  // recomputed at half the width; disagreement beyond tol is a diagnostic
  // failure.
  double exclusion_delta_rel = 1e-3;
  bool delta_sensitivity_check = true;
};

// Squared Hilbert-Schmidt norm, the double integral of K(k,k')^2 over the
// line. Refused symbolically (Divergent verdict) when the diagonal is not
// square-integrable (2*alpha_kernel >= 1) or the weight is not
// square-integrable (unit weight, or regulator with eta = 0 and 4*beta <= 1).
std::variant<QuadratureResult, ConvergenceVerdict> hs_norm_direct(
    const KernelSpec& kernel, double tol);
std::variant<QuadratureResult, ConvergenceVerdict> hs_norm_direct(
    const KernelSpec& kernel, const HsNormOptions& opts);

struct DiscretizedOperator {
  Eigen::VectorXd nodes;    // quadrature points on [-k_max, k_max]
  Eigen::VectorXd weights;  // positive quadrature weights
  Eigen::MatrixXd matrix;   // M_ij = sqrt(w_i) K(k_i,k_j) sqrt(w_j), symmetric
};

/*
 * Quadrature discretization of the kernel on [-k_max, k_max]. Smooth kernels
 * (alpha_kernel = 0) use Gauss-Legendre nodes. Weakly singular kernels use
 * uniform midpoint nodes with the diagonal entries carrying a zeta-corrected
 * strip patch,
 *     K_ii = w(k_i)^2 * sqrt(-2 zeta(2 alpha)) * h^(-alpha),
 * calibrated so the squared Frobenius norm reproduces the diagonal-strip mass
 * of the HS double integral including the leading O(h^(1-2 alpha)) midpoint
 * correction; the remaining Frobenius error is O(h^(3-2 alpha)).
 * k_max <= 0 selects default_k_max(weight).
 */
DiscretizedOperator nystrom_discretize(const KernelSpec& kernel, int n,
                                       double k_max = 0.0);

// Smallest k_max with w(k_max) < coverage * w(0).
double default_k_max(const SuppressionWeight& weight, double coverage = 1e-8);

struct SpectrumReport {
  Eigen::VectorXd eigenvalues;             // sorted by decreasing |lambda|
  double trace_norm_estimate = 0.0;        // sum |lambda_n|
  double hs_norm_estimate = 0.0;           // sqrt(sum lambda_n^2)
  std::map<double, double> p_summability;  // p -> sum |lambda_n|^p, p in {0.5, 1, 2}
};

// Dense symmetric eigendecomposition of the discretized operator; refuses
// matrices that are not symmetric to 1e-12 relative.
SpectrumReport eigen_spectrum(const DiscretizedOperator& op);

// Pointwise eigenvalues lambda_k = w(k) k^2 of the momentum-space
// multiplication operator.
std::vector<std::pair<double, double>> modified_laplacian_spectrum(
    const SuppressionWeight& weight, const Eigen::VectorXd& k_grid);
std::vector<std::pair<double, double>> modified_laplacian_spectrum(
    const RegulatorParams& params, const Eigen::VectorXd& k_grid);

struct SpectralGap {
  double k_star = 0.0;      // maximizer of k^2 exp(-gamma k^2)
  double lambda_max = 0.0;  // value at the maximizer
};

// Golden-section bracket followed by a Newton polish on the stationarity
// equation; cross-checked internally against the closed form
// (1/sqrt(gamma), 1/(gamma e)).
SpectralGap spectral_gap(double gamma);

// Gauss-Legendre nodes and weights on [lo, hi] via Golub-Welsch.
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n, double lo, double hi);

}  // namespace omega
