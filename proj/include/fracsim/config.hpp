#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fracsim/diagnostics.hpp"
#include "fracsim/grid.hpp"
#include "fracsim/integrator.hpp"
#include "fracsim/models.hpp"

namespace fracsim {

// Flat "key = value" text grouped into [section] blocks; '#' starts a
// comment. Unknown sections or keys are rejected by name.
class ConfigFile {
 public:
  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key) const;
  int get_int(const std::string& section, const std::string& key) const;
  bool get_bool(const std::string& section, const std::string& key) const;
  std::vector<double> get_list(const std::string& section, const std::string& key) const;

  // Throws ConfigError naming the first key or section outside the schema.
  void enforce_schema(
      const std::map<std::string, std::vector<std::string>>& schema) const;

  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

enum class InitialProfile { kernel, bumps };

// One simulation experiment: model, grid, stepping, diagnostics, outputs.
struct ExperimentConfig {
  ModelSpec model;
  GridSpec grid;
  SolverConfig solver;
  DiagnosticsConfig diagnostics;
  InitialProfile init = InitialProfile::kernel;
  double amplitude = 1.0;
  double init_kernel_time = 1.0;
  std::vector<double> snapshot_times;
  std::string name;  // output stem

  static ExperimentConfig from_file(const std::string& path);
  static ExperimentConfig from_config(const ConfigFile& cf, const std::string& stem);
  void validate() const;
};

// Parameters of the kernel verification suite driven by `fracsim kernel`.
struct KernelSuiteConfig {
  std::vector<double> theta_list = {0.8, 1.0, 1.5, 2.0};
  std::vector<double> d_list = {1, 2};
  int n = 256;
  double t = 1.0;
  std::vector<double> lambda_list = {0.5, 2.0};
  double bound_K = 1.0;
  double s_lo = 5.0, s_hi = 50.0;
  int s_count = 12;

  static KernelSuiteConfig from_file(const std::string& path);
  static KernelSuiteConfig from_config(const ConfigFile& cf);
};

}  // namespace fracsim
