#include "fracsim/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fracsim/errors.hpp"

namespace fracsim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

ConfigFile ConfigFile::parse_string(const std::string& text, const std::string& origin) {
  ConfigFile cf;
  cf.origin_ = origin;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      cf.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    if (section.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (cf.sections_[section].count(key))
      throw ConfigError(origin + ": duplicate key '" + section + "." + key + "'");
    cf.sections_[section][key] = value;
  }
  return cf;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str(), path);
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  if (it == sections_.end() || !it->second.count(key))
    throw ConfigError(origin_ + ": missing required key '" + section + "." + key + "'");
  return it->second.at(key);
}

double ConfigFile::get_double(const std::string& section, const std::string& key) const {
  const std::string s = get_string(section, key);
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(origin_ + ": key '" + section + "." + key + "' is not a number: '" + s + "'");
  }
}

int ConfigFile::get_int(const std::string& section, const std::string& key) const {
  const double v = get_double(section, key);
  const int i = static_cast<int>(std::lround(v));
  if (std::abs(v - i) > 0.0)
    throw ConfigError(origin_ + ": key '" + section + "." + key + "' is not an integer");
  return i;
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key) const {
  const std::string s = get_string(section, key);
  if (s == "on" || s == "true" || s == "1") return true;
  if (s == "off" || s == "false" || s == "0") return false;
  throw ConfigError(origin_ + ": key '" + section + "." + key + "' must be on/off");
}

std::vector<double> ConfigFile::get_list(const std::string& section,
                                         const std::string& key) const {
  const std::string s = get_string(section, key);
  std::vector<double> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell = trim(cell);
    if (cell.empty()) continue;
    if (cell == "inf" || cell == "infinity") {
      out.push_back(std::numeric_limits<double>::infinity());
      continue;
    }
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(cell, &pos));
      if (pos != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw ConfigError(origin_ + ": key '" + section + "." + key + "' has a bad entry: '" +
                        cell + "'");
    }
  }
  return out;
}

void ConfigFile::enforce_schema(
    const std::map<std::string, std::vector<std::string>>& schema) const {
  for (const auto& [section, keys] : sections_) {
    auto it = schema.find(section);
    if (it == schema.end())
      throw ConfigError(origin_ + ": unknown section '[" + section + "]'");
    for (const auto& [key, value] : keys) {
      (void)value;
      bool ok = false;
      for (const auto& allowed : it->second)
        if (allowed == key) {
          ok = true;
          break;
        }
      if (!ok) throw ConfigError(origin_ + ": unknown key '" + section + "." + key + "'");
    }
  }
}

namespace {

const std::map<std::string, std::vector<std::string>> kExperimentSchema = {
    {"model", {"kind", "theta", "kappa", "drift", "drift_matrix"}},
    {"grid", {"d", "n", "box_halfwidth"}},
    {"solver",
     {"dt", "t_end", "output_every", "cfl_safety", "dealias", "amplitude", "init",
      "init_kernel_time"}},
    {"diagnostics", {"lp", "entropy_p", "moment_q", "fit_window", "ratio_window"}},
    {"output", {"snapshot_times", "store_snapshots"}},
};

const std::map<std::string, std::vector<std::string>> kKernelSchema = {
    {"kernel",
     {"theta_list", "d_list", "n", "t", "lambda_list", "bound_K", "s_window", "s_count"}},
};

}  // namespace

ExperimentConfig ExperimentConfig::from_config(const ConfigFile& cf, const std::string& stem) {
  cf.enforce_schema(kExperimentSchema);
  ExperimentConfig ec;
  ec.name = stem;

  ec.grid.d = cf.get_int("grid", "d");
  ec.grid.n = cf.get_int("grid", "n");
  ec.grid.box = cf.get_double("grid", "box_halfwidth");

  ec.model.kind = model_kind_from_string(cf.get_string("model", "kind"));
  ec.model.theta = cf.get_double("model", "theta");
  ec.model.d = ec.grid.d;
  if (cf.has("model", "kappa")) ec.model.kappa = cf.get_double("model", "kappa");
  if (cf.has("model", "drift")) ec.model.drift_enabled = cf.get_bool("model", "drift");
  if (ec.model.kind == ModelKind::general_drift)
    ec.model.drift_matrix = read_matrix_file(cf.get_string("model", "drift_matrix"));

  ec.solver.dt = cf.get_double("solver", "dt");
  ec.solver.t_end = cf.get_double("solver", "t_end");
  if (cf.has("solver", "output_every")) ec.solver.output_every = cf.get_int("solver", "output_every");
  if (cf.has("solver", "cfl_safety")) ec.solver.cfl_safety = cf.get_double("solver", "cfl_safety");
  if (cf.has("solver", "dealias")) ec.model.dealias = cf.get_bool("solver", "dealias");
  if (cf.has("solver", "amplitude")) ec.amplitude = cf.get_double("solver", "amplitude");
  if (cf.has("solver", "init")) {
    const std::string s = cf.get_string("solver", "init");
    if (s == "kernel")
      ec.init = InitialProfile::kernel;
    else if (s == "bumps")
      ec.init = InitialProfile::bumps;
    else
      throw ConfigError("solver.init: unknown profile '" + s + "'");
  }
  if (cf.has("solver", "init_kernel_time"))
    ec.init_kernel_time = cf.get_double("solver", "init_kernel_time");

  if (cf.has("diagnostics", "lp")) ec.diagnostics.lp = cf.get_list("diagnostics", "lp");
  if (cf.has("diagnostics", "entropy_p"))
    ec.diagnostics.entropy_p = cf.get_double("diagnostics", "entropy_p");
  if (cf.has("diagnostics", "moment_q"))
    ec.diagnostics.moment_q = cf.get_double("diagnostics", "moment_q");
  if (cf.has("diagnostics", "fit_window")) {
    const auto w = cf.get_list("diagnostics", "fit_window");
    if (w.size() != 2) throw ConfigError("diagnostics.fit_window: expected two values");
    ec.diagnostics.fit_lo = w[0];
    ec.diagnostics.fit_hi = w[1];
  }
  if (cf.has("diagnostics", "ratio_window")) {
    const auto w = cf.get_list("diagnostics", "ratio_window");
    if (w.size() != 2) throw ConfigError("diagnostics.ratio_window: expected two values");
    ec.diagnostics.ratio_lo = w[0];
    ec.diagnostics.ratio_hi = w[1];
  }

  if (cf.has("output", "snapshot_times"))
    ec.snapshot_times = cf.get_list("output", "snapshot_times");
  if (cf.has("output", "store_snapshots"))
    ec.solver.store_snapshots = cf.get_bool("output", "store_snapshots");

  ec.validate();
  return ec;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::string stem = path;
  const auto slash = stem.find_last_of('/');
  if (slash != std::string::npos) stem = stem.substr(slash + 1);
  const auto dot = stem.find_last_of('.');
  if (dot != std::string::npos) stem = stem.substr(0, dot);
  return from_config(ConfigFile::parse_file(path), stem);
}

void ExperimentConfig::validate() const {
  grid.validate();
  model.validate();
  solver.validate();
  diagnostics.validate();
  if (!(amplitude > 0.0)) throw ConfigError("solver.amplitude: must be positive");
  if (!(init_kernel_time > 0.0)) throw ConfigError("solver.init_kernel_time: must be positive");
  if (model.d != grid.d) throw ConfigError("model/grid dimension mismatch");
}

KernelSuiteConfig KernelSuiteConfig::from_config(const ConfigFile& cf) {
  cf.enforce_schema(kKernelSchema);
  KernelSuiteConfig kc;
  if (cf.has("kernel", "theta_list")) kc.theta_list = cf.get_list("kernel", "theta_list");
  if (cf.has("kernel", "d_list")) kc.d_list = cf.get_list("kernel", "d_list");
  if (cf.has("kernel", "n")) kc.n = cf.get_int("kernel", "n");
  if (cf.has("kernel", "t")) kc.t = cf.get_double("kernel", "t");
  if (cf.has("kernel", "lambda_list")) kc.lambda_list = cf.get_list("kernel", "lambda_list");
  if (cf.has("kernel", "bound_K")) kc.bound_K = cf.get_double("kernel", "bound_K");
  if (cf.has("kernel", "s_window")) {
    const auto w = cf.get_list("kernel", "s_window");
    if (w.size() != 2) throw ConfigError("kernel.s_window: expected two values");
    kc.s_lo = w[0];
    kc.s_hi = w[1];
  }
  if (cf.has("kernel", "s_count")) kc.s_count = cf.get_int("kernel", "s_count");
  return kc;
}

KernelSuiteConfig KernelSuiteConfig::from_file(const std::string& path) {
  return from_config(ConfigFile::parse_file(path));
}

}  // namespace fracsim
