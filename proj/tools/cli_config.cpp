#include "cli_config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace omega::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

using Section = std::map<std::string, std::string>;
using RawConfig = std::map<std::string, Section>;

RawConfig parse_ini(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  RawConfig raw;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) + ": malformed section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty())
        throw ConfigError("config line " + std::to_string(lineno) + ": empty section name");
      raw[section];
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    if (section.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": key outside any section");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    if (!raw[section].emplace(key, value).second)
      throw ConfigError("duplicate key '" + key + "' in [" + section + "]");
  }
  return raw;
}

// Typed reader over one section with strict key accounting.
class SectionReader {
 public:
  SectionReader(const RawConfig& raw, const std::string& name) : name_(name) {
    const auto it = raw.find(name);
    if (it != raw.end()) section_ = &it->second;
  }

  void get(const char* key, double& out) {
    const std::string* v = fetch(key);
    if (!v) return;
    const char* b = v->data();
    const char* e = b + v->size();
    double parsed = 0.0;
    const auto res = std::from_chars(b, e, parsed);
    if (res.ec != std::errc{} || res.ptr != e)
      throw ConfigError("key '" + std::string(key) + "' in [" + name_ +
                        "]: '" + *v + "' is not a number");
    out = parsed;
  }

  void get(const char* key, int& out) {
    const std::string* v = fetch(key);
    if (!v) return;
    const char* b = v->data();
    const char* e = b + v->size();
    int parsed = 0;
    const auto res = std::from_chars(b, e, parsed);
    if (res.ec != std::errc{} || res.ptr != e)
      throw ConfigError("key '" + std::string(key) + "' in [" + name_ +
                        "]: '" + *v + "' is not an integer");
    out = parsed;
  }

  void get(const char* key, std::string& out) {
    const std::string* v = fetch(key);
    if (v) out = *v;
  }

  void get(const char* key, std::vector<double>& out) {
    const std::string* v = fetch(key);
    if (!v) return;
    std::string spaced = *v;
    for (char& c : spaced)
      if (c == ',') c = ' ';
    std::istringstream ss(spaced);
    std::vector<double> parsed;
    std::string tok;
    while (ss >> tok) {
      const char* b = tok.data();
      const char* e = b + tok.size();
      double x = 0.0;
      const auto res = std::from_chars(b, e, x);
      if (res.ec != std::errc{} || res.ptr != e)
        throw ConfigError("key '" + std::string(key) + "' in [" + name_ +
                          "]: '" + tok + "' is not a number");
      parsed.push_back(x);
    }
    if (parsed.empty())
      throw ConfigError("key '" + std::string(key) + "' in [" + name_ + "]: empty list");
    out = std::move(parsed);
  }

  void finish() const {
    if (!section_) return;
    for (const auto& [key, value] : *section_)
      if (!consumed_.count(key))
        throw ConfigError("unknown key '" + key + "' in [" + name_ + "]");
  }

 private:
  const std::string* fetch(const char* key) {
    consumed_.insert(key);
    if (!section_) return nullptr;
    const auto it = section_->find(key);
    return it == section_->end() ? nullptr : &it->second;
  }

  std::string name_;
  const Section* section_ = nullptr;
  std::set<std::string> consumed_;
};

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  const RawConfig raw = parse_ini(path);

  static const std::set<std::string> known_sections = {
      "regulator", "eval",  "admissibility", "integral", "spectrum",
      "gap",       "flow",  "ricci",         "partition", "norms"};
  for (const auto& [section, keys] : raw)
    if (!known_sections.count(section))
      throw ConfigError("unknown section [" + section + "]");

  ExperimentConfig cfg;

  SectionReader reg(raw, "regulator");
  reg.get("beta", cfg.regulator.beta);
  reg.get("eta", cfg.regulator.eta);
  reg.get("alpha_eps", cfg.regulator.alpha_eps);
  reg.get("k_c", cfg.regulator.k_c);
  reg.get("lambda", cfg.regulator.lambda);
  reg.get("dim", cfg.regulator.dim);
  reg.finish();

  SectionReader ev(raw, "eval");
  ev.get("k", cfg.eval.k);
  ev.finish();

  SectionReader adm(raw, "admissibility");
  adm.get("points", cfg.admissibility.points);
  adm.finish();

  SectionReader integ(raw, "integral");
  integ.get("alpha_growth", cfg.integral.alpha_growth);
  integ.get("tol", cfg.integral.tol);
  integ.get("max_subdivisions", cfg.integral.max_subdivisions);
  integ.finish();

  SectionReader spect(raw, "spectrum");
  spect.get("mode", cfg.spectrum.mode);
  spect.get("gamma", cfg.spectrum.gamma);
  spect.get("alpha_kernel", cfg.spectrum.alpha_kernel);
  spect.get("n", cfg.spectrum.n);
  spect.get("k_max", cfg.spectrum.k_max);
  spect.get("tol", cfg.spectrum.tol);
  spect.finish();
  if (cfg.spectrum.mode != "gaussian" && cfg.spectrum.mode != "regulator")
    throw ConfigError("key 'mode' in [spectrum]: must be 'gaussian' or 'regulator'");

  SectionReader gap(raw, "gap");
  gap.get("gamma", cfg.gap.gamma);
  gap.finish();

  SectionReader flow(raw, "flow");
  flow.get("k", cfg.flow.k);
  flow.get("lambda_start", cfg.flow.lambda_start);
  flow.get("lambda_end", cfg.flow.lambda_end);
  flow.get("steps", cfg.flow.steps);
  flow.finish();

  SectionReader ricci(raw, "ricci");
  ricci.get("k", cfg.ricci.k);
  ricci.finish();

  SectionReader part(raw, "partition");
  part.get("uv_cutoff", cfg.partition.uv_cutoff);
  part.get("tol", cfg.partition.tol);
  part.finish();

  SectionReader norms(raw, "norms");
  norms.get("function", cfg.norms.function);
  norms.get("scale", cfg.norms.scale);
  norms.get("center", cfg.norms.center);
  norms.get("width", cfg.norms.width);
  norms.get("p", cfg.norms.p);
  norms.get("cutoffs", cfg.norms.cutoffs);
  norms.get("tol", cfg.norms.tol);
  norms.finish();
  if (cfg.norms.function != "gaussian" && cfg.norms.function != "bump")
    throw ConfigError("key 'function' in [norms]: must be 'gaussian' or 'bump'");

  return cfg;
}

}  // namespace omega::cli
