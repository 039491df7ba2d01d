#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "omega/regulator.hpp"

namespace omega::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/*
 * Experiment configuration, parsed from flat INI-style sections. Parsing is
 * strict: unknown sections or keys are rejected by name; every key has a
 * default. Comments occupy their own lines and start with '#' or ';'.
 */
struct ExperimentConfig {
  RegulatorParams regulator;  // [regulator] beta eta alpha_eps k_c lambda dim

  struct Eval {
    double k = 1.0;
  } eval;  // [eval]

  struct Admissibility {
    int points = 1000;
  } admissibility;  // [admissibility]

  struct Integral {
    double alpha_growth = 0.0;
    double tol = 1e-10;
    int max_subdivisions = 10000;
  } integral;  // [integral]

  struct Spectrum {
    std::string mode = "gaussian";  // "gaussian" or "regulator"
    double gamma = 1.0;
    double alpha_kernel = 0.25;
    int n = 128;
    double k_max = 0.0;  // 0 = auto
    double tol = 1e-6;
  } spectrum;  // [spectrum]

  struct Gap {
    double gamma = 1.0;
  } gap;  // [gap]

  struct Flow {
    double k = 1.0;
    double lambda_start = 0.1;
    double lambda_end = 10.0;
    int steps = 1000;
  } flow;  // [flow]

  struct Ricci {
    double k = 1.0;
  } ricci;  // [ricci]

  struct Partition {
    double uv_cutoff = 0.0;  // 0 = 10 * lambda
    double tol = 1e-8;
  } partition;  // [partition]

  struct Norms {
    std::string function = "gaussian";  // "gaussian" or "bump"
    double scale = 0.5;                 // gaussian: f = exp(-scale k^2)
    double center = 1.0;                // bump: f = exp(-(k-center)^2/(2 width^2))
    double width = 0.5;
    double p = 2.0;
    std::vector<double> cutoffs = {2.0, 4.0, 8.0};
    double tol = 1e-8;
  } norms;  // [norms]
};

ExperimentConfig load_config(const std::string& path);

}  // namespace omega::cli
