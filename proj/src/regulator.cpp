#include "omega/regulator.hpp"

#include <cmath>
#include <limits>

namespace omega {

void RegulatorParams::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("RegulatorParams: beta must be positive");
  if (!(eta >= 0.0) || !std::isfinite(eta))
    throw std::invalid_argument("RegulatorParams: eta must be nonnegative");
  if (!(alpha_eps > 0.0) || !std::isfinite(alpha_eps))
    throw std::invalid_argument("RegulatorParams: alpha_eps must be positive");
  if (!(k_c > 0.0) || !std::isfinite(k_c))
    throw std::invalid_argument("RegulatorParams: k_c must be positive");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("RegulatorParams: lambda must be positive");
  if (dim < 1) throw std::invalid_argument("RegulatorParams: dim must be >= 1");
}

double epsilon_eval(double k2, const RegulatorParams& p) {
  p.validate();
  if (!(k2 >= 0.0) || !std::isfinite(k2))
    throw std::domain_error("epsilon_eval: k2 must be a nonnegative real");
  const double r = std::pow(k2 / (p.k_c * p.k_c), p.alpha_eps);
  return 1.0 / (1.0 + r);
}

double omega_eval(double k, const RegulatorParams& p) {
  p.validate();
  if (!(k >= 0.0) || !std::isfinite(k))
    throw std::domain_error("omega_eval: k must be a nonnegative real");
  const double x = (k / p.lambda) * (k / p.lambda);
  const double u = std::pow(x, p.beta);
  const double power_term = 1.0 / (1.0 + u);
  if (p.eta == 0.0) return power_term;
  const double damp = std::exp(-x);
  if (damp == 0.0) return power_term;  // exp underflow: eta-term is gone
  return power_term - p.eta * damp / epsilon_eval(k * k, p);
}

double omega_uv_asymptote(double k, const RegulatorParams& p) {
  p.validate();
  if (!(k > 0.0) || !std::isfinite(k))
    throw std::domain_error("omega_uv_asymptote: undefined at k = 0");
  const double ratio = (p.lambda / k) * (p.lambda / k);
  return std::pow(ratio, p.beta);
}

Regime classify_regime(double k, const RegulatorParams& p) {
  p.validate();
  if (!(k >= 0.0)) throw std::domain_error("classify_regime: k must be nonnegative");
  if (k < p.lambda / 10.0) return Regime::IR;
  if (k > 10.0 * p.lambda) return Regime::UV;
  return Regime::Transition;
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::IR: return "IR";
    case Regime::Transition: return "transition";
    case Regime::UV: return "UV";
  }
  return "?";
}

double admissibility_margin(double k, const RegulatorParams& p) {
  p.validate();
  if (!(k >= 0.0)) throw std::domain_error("admissibility_margin: k must be nonnegative");
  const double k2 = k * k;
  if (!std::isfinite(k2)) return 0.0;  // both sides have decayed to zero
  const double x = k2 / (p.lambda * p.lambda);
  const double u = std::pow(x, p.beta);
  const double damp = std::exp(-x);
  return epsilon_eval(k2, p) / (1.0 + u) - p.eta * damp;
}

AdmissibilityReport check_admissibility(const RegulatorParams& p,
                                        const Eigen::VectorXd& grid) {
  p.validate();
  if (grid.size() == 0)
    throw std::invalid_argument("check_admissibility: momentum grid is empty");
  AdmissibilityReport report;
  report.margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double k = grid[i];
    if (!(k >= 0.0))
      throw std::invalid_argument("check_admissibility: grid entries must be nonnegative");
    const double m = admissibility_margin(k, p);
    if (m < report.margin) {
      report.margin = m;
      report.worst_k = k;
    }
  }
  report.holds = report.margin >= 0.0;
  return report;
}

Eigen::VectorXd admissibility_grid(const RegulatorParams& p, int n) {
  p.validate();
  // {0} plus at least both log-range endpoints
  if (n < 3) throw std::invalid_argument("admissibility_grid: need at least 3 points");
  Eigen::VectorXd grid(n);
  grid[0] = 0.0;
  const double lo = std::log(1e-6 * p.lambda);
  const double hi = std::log(1e+6 * p.lambda);
  const int m = n - 1;
  for (int i = 0; i < m; ++i) {
    const double t = (m == 1) ? 0.0 : static_cast<double>(i) / (m - 1);
    grid[i + 1] = std::exp(lo + t * (hi - lo));
  }
  return grid;
}

SuppressionWeight SuppressionWeight::regulator(const RegulatorParams& p) {
  p.validate();
  SuppressionWeight w;
  w.kind_ = Kind::Regulator;
  w.params_ = p;
  return w;
}

SuppressionWeight SuppressionWeight::gaussian(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::domain_error("SuppressionWeight::gaussian: gamma must be positive");
  SuppressionWeight w;
  w.kind_ = Kind::Gaussian;
  w.gamma_ = gamma;
  return w;
}

SuppressionWeight SuppressionWeight::unit() {
  SuppressionWeight w;
  w.kind_ = Kind::Unit;
  return w;
}

double SuppressionWeight::operator()(double k) const {
  switch (kind_) {
    case Kind::Regulator: return amplitude_ * omega_eval(k, params_);
    case Kind::Gaussian: return amplitude_ * std::exp(-gamma_ * k * k);
    case Kind::Unit: return amplitude_;
  }
  return 0.0;
}

SuppressionWeight SuppressionWeight::scaled(double factor) const {
  if (!std::isfinite(factor))
    throw std::invalid_argument("SuppressionWeight::scaled: factor must be finite");
  SuppressionWeight w = *this;
  w.amplitude_ *= factor;
  return w;
}

double SuppressionWeight::gamma() const {
  if (kind_ != Kind::Gaussian)
    throw std::logic_error("SuppressionWeight::gamma: not a Gaussian weight");
  return gamma_;
}

const RegulatorParams& SuppressionWeight::params() const {
  if (kind_ != Kind::Regulator)
    throw std::logic_error("SuppressionWeight::params: not a regulator weight");
  return params_;
}

double SuppressionWeight::scale() const {
  switch (kind_) {
    case Kind::Regulator: return params_.lambda;
    case Kind::Gaussian: return 1.0 / std::sqrt(gamma_);
    case Kind::Unit: return 1.0;
  }
  return 1.0;
}

}  // namespace omega
