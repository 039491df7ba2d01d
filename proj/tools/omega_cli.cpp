// Command-line workbench over the omega library: evaluates the suppression
// function, runs regulated integrals, norms, spectra and flow trajectories
// from an INI experiment config, and emits tables plus CSV/JSON artifacts.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "cli_config.hpp"
#include "cli_format.hpp"
#include "omega/operators.hpp"
#include "omega/quadrature.hpp"
#include "omega/rg_flow.hpp"
#include "omega/weighted_measure.hpp"

namespace {

using namespace omega;
using namespace omega::cli;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDivergent = 2;
constexpr int kExitNumerical = 3;

struct CommonArgs {
  std::string config;
  std::string out_dir;
  std::string format = "table";
  unsigned long long seed = 20250809ULL;
};

struct CommandOutput {
  std::string table;          // human-readable stdout
  std::string csv;            // machine CSV; empty = none for this command
  JsonValue json = JsonValue::object();
};

void emit(const CommonArgs& args, const std::string& name, const CommandOutput& out) {
  if (args.format == "table")
    std::fputs(out.table.c_str(), stdout);
  else if (args.format == "csv")
    std::fputs(out.csv.empty() ? out.table.c_str() : out.csv.c_str(), stdout);
  else
    std::fputs(out.json.dump().c_str(), stdout);

  if (!args.out_dir.empty()) {
    std::filesystem::create_directories(args.out_dir);
    const auto base = std::filesystem::path(args.out_dir) / name;
    if (!out.csv.empty()) {
      std::ofstream f(base.string() + ".csv", std::ios::binary);
      f << out.csv;
    }
    std::ofstream g(base.string() + ".json", std::ios::binary);
    g << out.json.dump();
  }
}

int refuse_divergent(const std::string& op, const ConvergenceVerdict& v) {
  std::fprintf(stderr, "%s: divergent by the rule \"%s\" (margin = %s)\n", op.c_str(),
               v.deciding_inequality.c_str(), format_float(v.margin).c_str());
  return kExitDivergent;
}

JsonValue params_json(const RegulatorParams& p) {
  JsonValue j = JsonValue::object();
  j.set("beta", JsonValue::number(p.beta));
  j.set("eta", JsonValue::number(p.eta));
  j.set("alpha_eps", JsonValue::number(p.alpha_eps));
  j.set("k_c", JsonValue::number(p.k_c));
  j.set("lambda", JsonValue::number(p.lambda));
  j.set("dim", JsonValue::integer(p.dim));
  return j;
}

JsonValue quadrature_json(const QuadratureResult& r) {
  JsonValue j = JsonValue::object();
  j.set("value", JsonValue::number(r.value));
  j.set("abs_error_estimate", JsonValue::number(r.abs_error_estimate));
  j.set("subdivisions", JsonValue::integer(r.subdivisions));
  j.set("converged", JsonValue::boolean(r.converged));
  return j;
}

JsonValue verdict_json(const ConvergenceVerdict& v) {
  JsonValue j = JsonValue::object();
  j.set("status", JsonValue::string(to_string(v.status)));
  j.set("deciding_inequality", JsonValue::string(v.deciding_inequality));
  j.set("margin", JsonValue::number(v.margin));
  return j;
}

KernelSpec kernel_from_config(const ExperimentConfig& cfg) {
  if (cfg.spectrum.mode == "gaussian")
    return KernelSpec(cfg.spectrum.alpha_kernel,
                      SuppressionWeight::gaussian(cfg.spectrum.gamma));
  return KernelSpec(cfg.spectrum.alpha_kernel, cfg.regulator);
}

SampledFunction function_from_config(const ExperimentConfig& cfg) {
  if (cfg.norms.function == "gaussian") {
    const double a = cfg.norms.scale;
    if (!(a > 0.0)) throw ConfigError("key 'scale' in [norms]: must be positive");
    return SampledFunction::analytic(
        [a](double k) { return std::exp(-a * k * k); }, "exp(-" + format_float(a) + " k^2)");
  }
  const double c = cfg.norms.center, w = cfg.norms.width;
  if (!(w > 0.0)) throw ConfigError("key 'width' in [norms]: must be positive");
  return SampledFunction::analytic(
      [c, w](double k) {
        const double z = (k - c) / w;
        return std::exp(-0.5 * z * z);
      },
      "bump(center=" + format_float(c) + ", width=" + format_float(w) + ")");
}

int run_eval(const ExperimentConfig& cfg, const CommonArgs& args) {
  const double k = cfg.eval.k;
  const RegulatorParams& p = cfg.regulator;
  const double eps = epsilon_eval(k * k, p);
  const double om = omega_eval(k, p);
  const double asym = k > 0.0 ? omega_uv_asymptote(k, p)
                              : std::numeric_limits<double>::quiet_NaN();
  const std::string regime = to_string(classify_regime(k, p));

  CommandOutput out;
  out.table = "regulator evaluation\n";
  out.table += "  k            = " + format_float(k) + "\n";
  out.table += "  epsilon      = " + format_float(eps) + "\n";
  out.table += "  omega        = " + format_float(om) + "\n";
  out.table += "  uv_asymptote = " + format_float(asym) + "\n";
  out.table += "  regime       = " + regime + "\n";
  CsvBuilder csv("k,epsilon,omega,uv_asymptote,regime");
  csv.row({format_float(k), format_float(eps), format_float(om), format_float(asym), regime});
  out.csv = csv.text();
  out.json.set("params", params_json(p));
  out.json.set("k", JsonValue::number(k));
  out.json.set("epsilon", JsonValue::number(eps));
  out.json.set("omega", JsonValue::number(om));
  out.json.set("uv_asymptote", JsonValue::number(asym));
  out.json.set("regime", JsonValue::string(regime));
  emit(args, "eval", out);
  return kExitOk;
}

int run_admissibility(const ExperimentConfig& cfg, const CommonArgs& args) {
  const auto grid = admissibility_grid(cfg.regulator, cfg.admissibility.points);
  const AdmissibilityReport rep = check_admissibility(cfg.regulator, grid);

  CommandOutput out;
  out.table = "admissibility check (" + format_int(grid.size()) + " grid points)\n";
  out.table += "  holds      = " + format_bool(rep.holds) + "\n";
  out.table += "  min margin = " + format_float(rep.margin) + "\n";
  out.table += "  worst k    = " + format_float(rep.worst_k) + "\n";
  CsvBuilder csv("holds,min_margin,worst_k,grid_points");
  csv.row({format_bool(rep.holds), format_float(rep.margin), format_float(rep.worst_k),
           format_int(grid.size())});
  out.csv = csv.text();
  out.json.set("params", params_json(cfg.regulator));
  out.json.set("grid_points", JsonValue::integer(grid.size()));
  out.json.set("holds", JsonValue::boolean(rep.holds));
  out.json.set("min_margin", JsonValue::number(rep.margin));
  out.json.set("worst_k", JsonValue::number(rep.worst_k));
  emit(args, "admissibility", out);
  return kExitOk;
}

int integral_command(const std::string& name, double alpha_growth,
                     const ExperimentConfig& cfg, const CommonArgs& args) {
  QuadratureOptions opts;
  opts.abs_tol = cfg.integral.tol;
  opts.max_subdivisions = cfg.integral.max_subdivisions;
  const LoopIntegral result = regulated_loop_integral(alpha_growth, cfg.regulator, opts);
  if (const auto* verdict = std::get_if<ConvergenceVerdict>(&result))
    return refuse_divergent(name, *verdict);

  const auto& r = std::get<QuadratureResult>(result);
  const ConvergenceVerdict verdict =
      classify_convergence(cfg.regulator.dim, alpha_growth, cfg.regulator);

  CommandOutput out;
  out.table = name + " (alpha_growth = " + format_float(alpha_growth) + ")\n";
  out.table += "  status             = " + to_string(verdict.status) + " (" +
               verdict.deciding_inequality + ", margin " + format_float(verdict.margin) +
               ")\n";
  out.table += "  value              = " + format_float(r.value) + "\n";
  out.table += "  abs error estimate = " + format_float(r.abs_error_estimate) + "\n";
  out.table += "  subdivisions       = " + format_int(r.subdivisions) + "\n";
  CsvBuilder csv("value,abs_error_estimate,subdivisions,converged,status,margin");
  csv.row({format_float(r.value), format_float(r.abs_error_estimate),
           format_int(r.subdivisions), format_bool(r.converged),
           to_string(verdict.status), format_float(verdict.margin)});
  out.csv = csv.text();
  out.json.set("params", params_json(cfg.regulator));
  out.json.set("alpha_growth", JsonValue::number(alpha_growth));
  out.json.set("classification", verdict_json(verdict));
  out.json.set("integral", quadrature_json(r));
  emit(args, name, out);
  return kExitOk;
}

int run_integrate(const ExperimentConfig& cfg, const CommonArgs& args) {
  return integral_command("integrate", cfg.integral.alpha_growth, cfg, args);
}

int run_mass(const ExperimentConfig& cfg, const CommonArgs& args) {
  return integral_command("mass", 0.0, cfg, args);
}

int run_norm(const ExperimentConfig& cfg, const CommonArgs& args) {
  const SampledFunction f = function_from_config(cfg);
  const RegulatorParams& p = cfg.regulator;
  const WeightedValue norm = weighted_lp_norm(f, cfg.norms.p, p, cfg.norms.tol);
  if (const auto* verdict = std::get_if<ConvergenceVerdict>(&norm))
    return refuse_divergent("norm", *verdict);
  const EmbeddingDiagnostics diag =
      embedding_diagnostics(f, p, cfg.norms.cutoffs, cfg.norms.tol);

  CommandOutput out;
  out.table = "weighted norms of " + f.description() + "\n";
  out.table += "  Lp norm (p = " + format_float(cfg.norms.p) +
               ", weighted) = " + format_float(std::get<double>(norm)) + "\n";
  out.table += "  L2 weighted = " + format_float(diag.norm_weighted) + "\n";
  out.table += "  L2 plain    = " + format_float(diag.norm_l2) + "\n";
  out.table += "  ratio       = " + format_float(diag.ratio) + "\n";
  CsvBuilder csv("cutoff,tail_mass");
  JsonValue tails = JsonValue::array();
  for (const auto& [cutoff, mass] : diag.tail_mass) {
    out.table +=
        "  tail mass beyond " + format_float(cutoff) + " = " + format_float(mass) + "\n";
    csv.row({format_float(cutoff), format_float(mass)});
    JsonValue t = JsonValue::object();
    t.set("cutoff", JsonValue::number(cutoff));
    t.set("tail_mass", JsonValue::number(mass));
    tails.push(std::move(t));
  }
  out.csv = csv.text();
  out.json.set("params", params_json(p));
  out.json.set("function", JsonValue::string(f.description()));
  out.json.set("p", JsonValue::number(cfg.norms.p));
  out.json.set("lp_norm_weighted", JsonValue::number(std::get<double>(norm)));
  out.json.set("l2_norm_weighted", JsonValue::number(diag.norm_weighted));
  out.json.set("l2_norm_plain", JsonValue::number(diag.norm_l2));
  out.json.set("ratio", JsonValue::number(diag.ratio));
  out.json.set("tail_masses", std::move(tails));
  emit(args, "norm", out);
  return kExitOk;
}

int run_hsnorm(const ExperimentConfig& cfg, const CommonArgs& args) {
  const KernelSpec kernel = kernel_from_config(cfg);
  const auto result = hs_norm_direct(kernel, cfg.spectrum.tol);
  if (const auto* verdict = std::get_if<ConvergenceVerdict>(&result))
    return refuse_divergent("hsnorm", *verdict);
  const auto& r = std::get<QuadratureResult>(result);
  if (!r.converged) {
    std::fprintf(stderr, "hsnorm: quadrature did not meet tolerance\n");
    return kExitNumerical;
  }

  CommandOutput out;
  out.table = "squared Hilbert-Schmidt norm (mode " + cfg.spectrum.mode +
              ", alpha_kernel = " + format_float(kernel.alpha_kernel) + ")\n";
  out.table += "  value              = " + format_float(r.value) + "\n";
  out.table += "  abs error estimate = " + format_float(r.abs_error_estimate) + "\n";
  CsvBuilder csv("value,abs_error_estimate,subdivisions,converged");
  csv.row({format_float(r.value), format_float(r.abs_error_estimate),
           format_int(r.subdivisions), format_bool(r.converged)});
  out.csv = csv.text();
  out.json.set("mode", JsonValue::string(cfg.spectrum.mode));
  out.json.set("alpha_kernel", JsonValue::number(kernel.alpha_kernel));
  out.json.set("hs_norm_squared", quadrature_json(r));
  emit(args, "hsnorm", out);
  return kExitOk;
}

int run_spectrum(const ExperimentConfig& cfg, const CommonArgs& args) {
  const KernelSpec kernel = kernel_from_config(cfg);
  DiscretizedOperator op;
  try {
    op = nystrom_discretize(kernel, cfg.spectrum.n, cfg.spectrum.k_max);
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    if (what.find("divergent") != std::string::npos) {
      std::fprintf(stderr, "spectrum: %s\n", what.c_str());
      return kExitDivergent;
    }
    throw;
  }
  const SpectrumReport report = eigen_spectrum(op);

  CommandOutput out;
  out.table = "spectrum of the discretized operator (n = " + format_int(cfg.spectrum.n) +
              ", mode " + cfg.spectrum.mode + ")\n";
  out.table += "  trace norm estimate = " + format_float(report.trace_norm_estimate) + "\n";
  out.table += "  HS norm estimate    = " + format_float(report.hs_norm_estimate) + "\n";
  const int shown = std::min<int>(5, static_cast<int>(report.eigenvalues.size()));
  for (int i = 0; i < shown; ++i)
    out.table += "  lambda_" + format_int(i) + " = " +
                 format_float(report.eigenvalues[i]) + "\n";
  CsvBuilder csv("index,eigenvalue");
  for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i)
    csv.row({format_int(i), format_float(report.eigenvalues[i])});
  out.csv = csv.text();
  out.json.set("mode", JsonValue::string(cfg.spectrum.mode));
  out.json.set("n", JsonValue::integer(cfg.spectrum.n));
  out.json.set("trace_norm_estimate", JsonValue::number(report.trace_norm_estimate));
  out.json.set("hs_norm_estimate", JsonValue::number(report.hs_norm_estimate));
  JsonValue psum = JsonValue::object();
  for (const auto& [pexp, value] : report.p_summability)
    psum.set(format_float(pexp), JsonValue::number(value));
  out.json.set("p_summability", std::move(psum));
  JsonValue evs = JsonValue::array();
  for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i)
    evs.push(JsonValue::number(report.eigenvalues[i]));
  out.json.set("eigenvalues", std::move(evs));
  emit(args, "spectrum", out);
  return kExitOk;
}

int run_gap(const ExperimentConfig& cfg, const CommonArgs& args) {
  const SpectralGap gap = spectral_gap(cfg.gap.gamma);
  char line[128];
  std::snprintf(line, sizeof(line), "k_star = %.6f  lambda_max = %.6f\n", gap.k_star,
                gap.lambda_max);

  CommandOutput out;
  out.table = line;
  CsvBuilder csv("gamma,k_star,lambda_max");
  csv.row({format_float(cfg.gap.gamma), format_float(gap.k_star),
           format_float(gap.lambda_max)});
  out.csv = csv.text();
  out.json.set("gamma", JsonValue::number(cfg.gap.gamma));
  out.json.set("k_star", JsonValue::number(gap.k_star));
  out.json.set("lambda_max", JsonValue::number(gap.lambda_max));
  emit(args, "gap", out);
  return kExitOk;
}

int run_flow(const ExperimentConfig& cfg, const CommonArgs& args) {
  const FlowTrajectory traj =
      flow_trajectory(cfg.flow.k, cfg.regulator, cfg.flow.lambda_start,
                      cfg.flow.lambda_end, cfg.flow.steps);
  const double gap = std::abs(traj.integrated_change - traj.endpoint_change);

  CommandOutput out;
  out.table = "flow trajectory at k = " + format_float(cfg.flow.k) + " (" +
              format_int(traj.samples.size()) + " samples)\n";
  out.table += "  omega endpoints    = " + format_float(traj.samples.front().omega) +
               " -> " + format_float(traj.samples.back().omega) + "\n";
  out.table += "  integrated change  = " + format_float(traj.integrated_change) + "\n";
  out.table += "  endpoint change    = " + format_float(traj.endpoint_change) + "\n";
  out.table += "  consistency gap    = " + format_float(gap) + "\n";
  CsvBuilder csv("lambda,omega,dOmega_dlogLambda,ricci_proxy");
  for (const FlowSample& s : traj.samples)
    csv.row({format_float(s.lambda), format_float(s.omega),
             format_float(s.domega_dlog_lambda), format_float(s.ricci_proxy)});
  out.csv = csv.text();
  out.json.set("params", params_json(cfg.regulator));
  out.json.set("k", JsonValue::number(cfg.flow.k));
  out.json.set("samples", JsonValue::integer(static_cast<long long>(traj.samples.size())));
  out.json.set("integrated_change", JsonValue::number(traj.integrated_change));
  out.json.set("endpoint_change", JsonValue::number(traj.endpoint_change));
  out.json.set("consistency_gap", JsonValue::number(gap));
  emit(args, "flow", out);
  return kExitOk;
}

int run_ricci(const ExperimentConfig& cfg, const CommonArgs& args) {
  const double value = ricci_flow_eval(cfg.ricci.k, cfg.regulator);

  CommandOutput out;
  out.table = "curvature flow proxy at k = " + format_float(cfg.ricci.k) + "\n";
  out.table += "  value = " + format_float(value) + "\n";
  CsvBuilder csv("k,lambda,value");
  csv.row({format_float(cfg.ricci.k), format_float(cfg.regulator.lambda),
           format_float(value)});
  out.csv = csv.text();
  out.json.set("params", params_json(cfg.regulator));
  out.json.set("k", JsonValue::number(cfg.ricci.k));
  out.json.set("value", JsonValue::number(value));
  emit(args, "ricci", out);
  return kExitOk;
}

int run_partition(const ExperimentConfig& cfg, const CommonArgs& args) {
  const double cutoff = cfg.partition.uv_cutoff > 0.0 ? cfg.partition.uv_cutoff
                                                      : 10.0 * cfg.regulator.lambda;
  const auto result = log_partition(cfg.regulator, cutoff, cfg.partition.tol);
  if (const auto* bad = std::get_if<IllDefinedGaussian>(&result)) {
    std::fprintf(stderr,
                 "partition: ill-defined Gaussian mode: 1 - omega = %s at k = %s\n",
                 format_float(bad->one_minus_omega).c_str(),
                 format_float(bad->offending_k).c_str());
    return kExitDivergent;
  }
  const auto& r = std::get<PartitionResult>(result);

  CommandOutput out;
  out.table = "log partition integral up to cutoff " + format_float(r.uv_cutoff) + "\n";
  out.table += "  ln Z (subtracted)  = " + format_float(r.ln_z_density) + "\n";
  out.table += "  free volume term   = " + format_float(r.free_log_volume) + "\n";
  out.table += "  min(1 - omega)     = " + format_float(r.integrand_min_argument) + "\n";
  CsvBuilder csv("uv_cutoff,ln_z_density,free_log_volume,integrand_min_argument");
  csv.row({format_float(r.uv_cutoff), format_float(r.ln_z_density),
           format_float(r.free_log_volume), format_float(r.integrand_min_argument)});
  out.csv = csv.text();
  out.json.set("params", params_json(cfg.regulator));
  out.json.set("uv_cutoff", JsonValue::number(r.uv_cutoff));
  out.json.set("ln_z_density", JsonValue::number(r.ln_z_density));
  out.json.set("free_log_volume", JsonValue::number(r.free_log_volume));
  out.json.set("integrand_min_argument", JsonValue::number(r.integrand_min_argument));
  emit(args, "partition", out);
  return kExitOk;
}

JsonValue discrepancy_json(double k, const RegulatorParams& p) {
  const DerivativeDiscrepancy d = derivative_discrepancy(k, p);
  JsonValue j = JsonValue::object();
  j.set("k", JsonValue::number(k));
  j.set("analytic", JsonValue::number(d.analytic));
  j.set("printed", JsonValue::number(d.printed));
  j.set("abs_difference", JsonValue::number(d.abs_difference));
  j.set("sign_flip", JsonValue::boolean(d.sign_flip));
  return j;
}

int run_report(const ExperimentConfig& cfg, const CommonArgs& args) {
  const RegulatorParams& p = cfg.regulator;
  JsonValue doc = JsonValue::object();
  doc.set("params", params_json(p));
  doc.set("seed", JsonValue::integer(static_cast<long long>(args.seed)));
  doc.set("uv_power_damping", JsonValue::boolean(p.uv_power_damping()));

  const auto grid = admissibility_grid(p, 2001);
  const AdmissibilityReport adm = check_admissibility(p, grid);
  {
    JsonValue j = JsonValue::object();
    j.set("holds", JsonValue::boolean(adm.holds));
    j.set("min_margin", JsonValue::number(adm.margin));
    j.set("worst_k", JsonValue::number(adm.worst_k));
    doc.set("admissibility", std::move(j));
  }

  doc.set("classification",
          verdict_json(classify_convergence(p.dim, cfg.integral.alpha_growth, p)));

  {
    const LoopIntegral mass = total_mass(p, cfg.integral.tol);
    if (const auto* verdict = std::get_if<ConvergenceVerdict>(&mass))
      doc.set("total_mass", verdict_json(*verdict));
    else
      doc.set("total_mass", quadrature_json(std::get<QuadratureResult>(mass)));
  }

  // flow-formula discrepancy at the configured parameters and at the
  // canonical reference point where the sign flip is exactly +-0.5
  {
    JsonValue j = JsonValue::object();
    j.set("at_config", discrepancy_json(p.lambda, p));
    RegulatorParams ref;
    ref.beta = 1.0;
    ref.eta = 0.0;
    j.set("reference_k_equals_lambda", discrepancy_json(1.0, ref));
    doc.set("derivative_discrepancy", std::move(j));
  }

  {
    const SpectralGap gap = spectral_gap(cfg.gap.gamma);
    JsonValue j = JsonValue::object();
    j.set("gamma", JsonValue::number(cfg.gap.gamma));
    j.set("k_star", JsonValue::number(gap.k_star));
    j.set("lambda_max", JsonValue::number(gap.lambda_max));
    doc.set("spectral_gap", std::move(j));
  }

  {
    const FlowTrajectory traj = flow_trajectory(
        cfg.flow.k, p, cfg.flow.lambda_start, cfg.flow.lambda_end, cfg.flow.steps);
    JsonValue j = JsonValue::object();
    j.set("integrated_change", JsonValue::number(traj.integrated_change));
    j.set("endpoint_change", JsonValue::number(traj.endpoint_change));
    j.set("consistency_gap",
          JsonValue::number(std::abs(traj.integrated_change - traj.endpoint_change)));
    doc.set("flow_consistency", std::move(j));
  }

  {
    const double cutoff = cfg.partition.uv_cutoff > 0.0 ? cfg.partition.uv_cutoff
                                                        : 10.0 * p.lambda;
    const auto result = log_partition(p, cutoff, cfg.partition.tol);
    JsonValue j = JsonValue::object();
    if (const auto* bad = std::get_if<IllDefinedGaussian>(&result)) {
      j.set("refused", JsonValue::boolean(true));
      j.set("offending_k", JsonValue::number(bad->offending_k));
      j.set("one_minus_omega", JsonValue::number(bad->one_minus_omega));
    } else {
      const auto& r = std::get<PartitionResult>(result);
      j.set("refused", JsonValue::boolean(false));
      j.set("uv_cutoff", JsonValue::number(r.uv_cutoff));
      j.set("ln_z_density", JsonValue::number(r.ln_z_density));
      j.set("integrand_min_argument", JsonValue::number(r.integrand_min_argument));
    }
    doc.set("partition", std::move(j));
  }

  // randomized property sweeps
  std::mt19937_64 rng(args.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  {
    // monotonicity of omega in k (guaranteed only for eta = 0; measured here)
    int violations = 0;
    const int samples = 200;
    for (int i = 0; i < samples; ++i) {
      const double k1 = p.lambda * std::pow(10.0, -4.0 + 8.0 * unif(rng));
      const double k2 = k1 * (1.0 + unif(rng));
      if (omega_eval(k2, p) > omega_eval(k1, p) + 1e-13) ++violations;
    }
    JsonValue j = JsonValue::object();
    j.set("samples", JsonValue::integer(samples));
    j.set("violations", JsonValue::integer(violations));
    j.set("monotone", JsonValue::boolean(violations == 0));
    doc.set("omega_monotonicity", std::move(j));
  }
  {
    // weighted norm never exceeds the plain norm while omega <= 1
    int violations = 0;
    const int samples = 20;
    for (int i = 0; i < samples; ++i) {
      const double c = 0.2 + 3.0 * unif(rng);
      const double w = 0.2 + unif(rng);
      const SampledFunction f = SampledFunction::analytic(
          [c, w](double k) {
            const double z = (k - c) / w;
            return std::exp(-0.5 * z * z);
          },
          "bump");
      const EmbeddingDiagnostics d = embedding_diagnostics(f, p, {4.0 * p.lambda}, 1e-8);
      if (d.ratio > 1.0 + 1e-10) ++violations;
    }
    JsonValue j = JsonValue::object();
    j.set("samples", JsonValue::integer(samples));
    j.set("violations", JsonValue::integer(violations));
    doc.set("norm_bound", std::move(j));
  }
  {
    // curvature proxy sign
    int nonnegative = 0;
    const int samples = 50;
    for (int i = 0; i < samples; ++i) {
      RegulatorParams q = p;
      q.beta = 0.3 + 3.0 * unif(rng);
      q.lambda = std::pow(10.0, -1.0 + 2.0 * unif(rng));
      const double k = std::pow(10.0, -1.0 + 2.0 * unif(rng));
      if (!(ricci_flow_eval(k, q) < 0.0)) ++nonnegative;
    }
    JsonValue j = JsonValue::object();
    j.set("samples", JsonValue::integer(samples));
    j.set("nonnegative", JsonValue::integer(nonnegative));
    j.set("all_negative", JsonValue::boolean(nonnegative == 0));
    doc.set("ricci_sign", std::move(j));
  }

  CommandOutput out;
  out.table = "full report written";
  out.table += args.out_dir.empty() ? " to stdout (use --format json)\n"
                                    : " to " + args.out_dir + "/report.json\n";
  out.json = std::move(doc);
  emit(args, "report", out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"omega: numerical workbench for momentum-space suppression functions"};
  app.require_subcommand(1);

  CommonArgs args;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"eval", "evaluate the suppression function at one momentum"},
      {"admissibility", "check the positivity inequality on a log grid"},
      {"integrate", "regulated momentum-space integral with classification"},
      {"mass", "total mass of the weighted measure"},
      {"norm", "weighted Lp norm and embedding diagnostics"},
      {"hsnorm", "squared Hilbert-Schmidt norm of the integral kernel"},
      {"spectrum", "discretize the kernel and report its spectrum"},
      {"gap", "maximizer of the Gaussian-mode eigenvalue curve"},
      {"flow", "trajectory of omega along the running scale"},
      {"ricci", "curvature flow proxy"},
      {"partition", "log partition integral of the regulated Gaussian"},
      {"report", "full battery: admissibility, mass, discrepancies, sweeps"},
  };
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", args.config, "experiment configuration file")->required();
    sub->add_option("--out", args.out_dir, "directory for CSV/JSON artifacts");
    sub->add_option("--format", args.format, "stdout format: table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    sub->add_option("--seed", args.seed, "seed for randomized property sweeps");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const omega::cli::ExperimentConfig cfg = omega::cli::load_config(args.config);
    if (command == "eval") return run_eval(cfg, args);
    if (command == "admissibility") return run_admissibility(cfg, args);
    if (command == "integrate") return run_integrate(cfg, args);
    if (command == "mass") return run_mass(cfg, args);
    if (command == "norm") return run_norm(cfg, args);
    if (command == "hsnorm") return run_hsnorm(cfg, args);
    if (command == "spectrum") return run_spectrum(cfg, args);
    if (command == "gap") return run_gap(cfg, args);
    if (command == "flow") return run_flow(cfg, args);
    if (command == "ricci") return run_ricci(cfg, args);
    if (command == "partition") return run_partition(cfg, args);
    if (command == "report") return run_report(cfg, args);
    std::fprintf(stderr, "unknown command '%s'\n", command.c_str());
    return kExitUsage;
  } catch (const omega::diagnostic_error& e) {
    std::fprintf(stderr, "%s: %s\n", command.c_str(), e.what());
    return kExitNumerical;
  } catch (const omega::cli::ConfigError& e) {
    std::fprintf(stderr, "%s: config error: %s\n", command.c_str(), e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s: error: %s\n", command.c_str(), e.what());
    return kExitUsage;
  }
}
