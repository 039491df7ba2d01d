#include "omega/rg_flow.hpp"

#include <cmath>

namespace omega {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1 - w(k) in the cancellation-free form u/(1+u) + eta exp(-x)/eps.
double one_minus_omega(double k, const RegulatorParams& p) {
  const double x = (k / p.lambda) * (k / p.lambda);
  const double u = std::pow(x, p.beta);
  const double power_part = std::isfinite(u) ? u / (1.0 + u) : 1.0;
  if (p.eta == 0.0) return power_part;
  const double damp = std::exp(-x);
  if (damp == 0.0) return power_part;
  return power_part + p.eta * damp / epsilon_eval(k * k, p);
}

// Fourth-order integral of uniform samples: composite Simpson with a 3/8
// block absorbing an odd interval count.
double integrate_uniform(const std::vector<double>& f, double h) {
  const size_t n = f.size();
  if (n < 2) return 0.0;
  const size_t intervals = n - 1;
  if (intervals == 1) return 0.5 * h * (f[0] + f[1]);
  double total = 0.0;
  size_t simpson_end = intervals;  // Simpson covers [0, simpson_end]
  if (intervals % 2 == 1) {
    simpson_end = intervals - 3;
    total += 0.375 * h * (f[n - 4] + 3.0 * f[n - 3] + 3.0 * f[n - 2] + f[n - 1]);
  }
  for (size_t i = 0; i + 2 <= simpson_end; i += 2)
    total += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
  return total;
}

}  // namespace

double domega_dlambda_analytic(double k, const RegulatorParams& p) {
  p.validate();
  if (!(k >= 0.0) || !std::isfinite(k))
    throw std::domain_error("domega_dlambda_analytic: k must be a nonnegative real");
  const double x = (k / p.lambda) * (k / p.lambda);
  const double u = std::pow(x, p.beta);
  const double power_term =
      std::isfinite(u) ? 2.0 * p.beta * (u / ((1.0 + u) * (1.0 + u))) : 0.0;
  if (p.eta == 0.0) return power_term;
  const double damp = std::exp(-x);
  if (damp == 0.0) return power_term;
  return power_term - (2.0 * p.eta * x / epsilon_eval(k * k, p)) * damp;
}

double domega_dlambda_paper(double k, const RegulatorParams& p) {
  p.validate();
  if (!(k >= 0.0) || !std::isfinite(k))
    throw std::domain_error("domega_dlambda_paper: k must be a nonnegative real");
  const double v = std::pow(k / p.lambda, 2.0 * p.beta);
  const double term1 =
      std::isfinite(v) ? -2.0 * p.beta * (v / ((1.0 + v) * (1.0 + v))) * p.lambda : 0.0;
  if (p.eta == 0.0) return term1;
  const double damp = std::exp(-(k / p.lambda) * (k / p.lambda));
  if (damp == 0.0) return term1;
  const double term2 = -2.0 * p.eta * k * k * damp / (epsilon_eval(k * k, p) * p.lambda);
  return term1 + term2;
}

DerivativeDiscrepancy derivative_discrepancy(double k, const RegulatorParams& p) {
  DerivativeDiscrepancy d;
  d.analytic = domega_dlambda_analytic(k, p);
  d.printed = domega_dlambda_paper(k, p);
  d.abs_difference = std::abs(d.analytic - d.printed);
  d.sign_flip = d.analytic * d.printed < 0.0;
  return d;
}

double ricci_flow_eval(double k, const RegulatorParams& p) {
  p.validate();
  if (!(k > 0.0) || !std::isfinite(k))
    throw std::domain_error("ricci_flow_eval: k must be positive");
  return -4.0 * p.beta * p.beta * std::pow(k, 4.0 * p.beta - 2.0) /
         (p.lambda * p.lambda * p.lambda);
}

FlowTrajectory flow_trajectory(double k, const RegulatorParams& p, double lambda_start,
                               double lambda_end, int steps) {
  p.validate();
  if (!(k >= 0.0)) throw std::domain_error("flow_trajectory: k must be nonnegative");
  if (!(lambda_start > 0.0) || !(lambda_end > 0.0))
    throw std::invalid_argument("flow_trajectory: lambda bounds must be positive");
  if (steps < 2) throw std::invalid_argument("flow_trajectory: need at least 2 steps");

  const double x0 = std::log(lambda_start);
  const double x1 = std::log(lambda_end);
  const double h = (x1 - x0) / (steps - 1);

  FlowTrajectory traj;
  traj.samples.reserve(static_cast<size_t>(steps));
  std::vector<double> derivative(static_cast<size_t>(steps));
  RegulatorParams q = p;
  for (int i = 0; i < steps; ++i) {
    q.lambda = std::exp(x0 + i * h);
    FlowSample s;
    s.lambda = q.lambda;
    s.omega = omega_eval(k, q);
    s.domega_dlog_lambda = domega_dlambda_analytic(k, q);
    if (k > 0.0) {
      s.ricci_proxy = ricci_flow_eval(k, q);
    } else {
      // k -> 0 limit of the printed formula
      const double power = 4.0 * p.beta - 2.0;
      s.ricci_proxy = power > 0.0 ? 0.0
                      : power == 0.0
                          ? -4.0 * p.beta * p.beta / (q.lambda * q.lambda * q.lambda)
                          : -kInf;
    }
    derivative[static_cast<size_t>(i)] = s.domega_dlog_lambda;
    traj.samples.push_back(s);
  }

  // int (dw/dlambda) dlambda = int (lambda dw/dlambda) dln(lambda)
  traj.integrated_change =
      (lambda_start == lambda_end) ? 0.0 : integrate_uniform(derivative, h);
  RegulatorParams qa = p, qb = p;
  qa.lambda = lambda_start;
  qb.lambda = lambda_end;
  traj.endpoint_change = omega_eval(k, qb) - omega_eval(k, qa);
  return traj;
}

double log_partition_integrand(double k, const RegulatorParams& p) {
  p.validate();
  if (!(k >= 0.0) || !std::isfinite(k))
    throw std::domain_error("log_partition_integrand: k must be a nonnegative real");
  return std::log(2.0 * M_PI) - std::log(one_minus_omega(k, p));
}

std::variant<PartitionResult, IllDefinedGaussian> log_partition(const RegulatorParams& p,
                                                                double uv_cutoff,
                                                                double tol) {
  p.validate();
  if (!(uv_cutoff > 0.0) || !std::isfinite(uv_cutoff))
    throw std::invalid_argument("log_partition: uv_cutoff must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("log_partition: tol must be positive");

  // scan for the minimum of 1 - w over the range; refuse when it is not
  // strictly positive
  const int scan_points = 2001;
  double min_arg = kInf, min_k = 0.0;
  for (int i = 0; i < scan_points; ++i) {
    const double k = uv_cutoff * i / (scan_points - 1);
    const double m = one_minus_omega(k, p);
    if (m < min_arg) {
      min_arg = m;
      min_k = k;
    }
  }
  if (!(min_arg > 0.0)) return IllDefinedGaussian{min_k, min_arg};

  auto integrand = [&p](double k) {
    return -std::pow(k, p.dim - 1) * std::log(one_minus_omega(k, p));
  };
  QuadratureOptions opts;
  opts.abs_tol = tol;
  opts.rel_tol = std::min(tol, 1e-9);
  const QuadratureResult r = integrate_line(integrand, 0.0, uv_cutoff, opts);
  if (!r.converged)
    throw diagnostic_error("log_partition: quadrature did not meet tolerance");

  const double area = sphere_area(p.dim);
  PartitionResult result;
  result.ln_z_density = 0.5 * area * r.value;
  result.free_log_volume =
      0.5 * std::log(2.0 * M_PI) * area * std::pow(uv_cutoff, p.dim) / p.dim;
  result.uv_cutoff = uv_cutoff;
  result.integrand_min_argument = min_arg;
  return result;
}

}  // namespace omega
