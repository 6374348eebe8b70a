#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fracsim/diagnostics.hpp"
#include "fracsim/errors.hpp"
#include "fracsim/experiment.hpp"
#include "fracsim/io.hpp"
#include "fracsim/kernels.hpp"
#include "fracsim/par.hpp"
#include "nlohmann/json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCheck = 4;

int cmd_simulate(const std::vector<std::string>& config_paths, const std::string& out,
                 int jobs, bool check) {
  std::vector<fracsim::ExperimentConfig> configs;
  for (const auto& p : config_paths) configs.push_back(fracsim::ExperimentConfig::from_file(p));
  if (configs.size() == 1 && jobs <= 1) {
    fracsim::Trajectory traj = fracsim::run_experiment(configs[0], out);
    if (check) {
      const auto bad = fracsim::self_check(traj);
      if (!bad.empty()) {
        for (const auto& b : bad) std::cerr << "self-check: " << b << "\n";
        return kExitCheck;
      }
    }
    std::cout << configs[0].name << ": " << traj.times.size() << " outputs, final t = "
              << fracsim::format_double(traj.times.back()) << "\n";
    return kExitOk;
  }
  return fracsim::run_sweep(configs, out, jobs, check);
}

int cmd_kernel(const std::string& config_path, const std::string& out) {
  fracsim::KernelSuiteConfig kc = config_path.empty()
                                      ? fracsim::KernelSuiteConfig{}
                                      : fracsim::KernelSuiteConfig::from_file(config_path);
  fs::create_directories(out);

  std::ofstream rep(fs::path(out) / "kernel_report.csv");
  rep << "theta,d,t,mass_defect,min_over_max,selfsim_lambda,selfsim_max,selfsim_l1,"
         "inner_min,inner_max,outer_min,outer_max,grad_ratio_sup\n";
  for (double dd : kc.d_list) {
    const int d = static_cast<int>(dd);
    for (double theta : kc.theta_list) {
      fracsim::GridSpec g{d, kc.n, 20.0 * std::pow(kc.t, 1.0 / theta)};
      fracsim::KernelSample ks = fracsim::heat_kernel(theta, kc.t, g);
      const double mass = fracsim::par::sum(ks.values.v) * g.cell_volume();
      const double mn = fracsim::par::min(ks.values.v);
      const double mx = fracsim::par::max(ks.values.v);
      const auto bounds = fracsim::pointwise_bounds_report(theta, kc.t, kc.bound_K, g);
      const double grad = fracsim::gradient_bound_report(theta, kc.t, g);
      for (double lambda : kc.lambda_list) {
        const auto ss = fracsim::self_similarity_check(theta, kc.t, lambda, g);
        rep << fracsim::format_double(theta) << ',' << d << ','
            << fracsim::format_double(kc.t) << ',' << fracsim::format_double(mass - 1.0) << ','
            << fracsim::format_double(mn / mx) << ',' << fracsim::format_double(lambda) << ','
            << fracsim::format_double(ss.max_error) << ',' << fracsim::format_double(ss.l1_error)
            << ',' << fracsim::format_double(bounds.inner_min) << ','
            << fracsim::format_double(bounds.inner_max) << ','
            << fracsim::format_double(theta < 2.0 ? bounds.outer_min : 0.0) << ','
            << fracsim::format_double(theta < 2.0 ? bounds.outer_max : 0.0) << ','
            << fracsim::format_double(grad) << '\n';
      }

      std::vector<double> svals(kc.s_count);
      for (int i = 0; i < kc.s_count; ++i)
        svals[i] = kc.s_lo * std::pow(kc.s_hi / kc.s_lo,
                                      static_cast<double>(i) / (kc.s_count - 1));
      const auto rows = fracsim::time_difference_decay(theta, d, svals, kc.n);
      std::ofstream tds(fs::path(out) / ("kernel_gap_theta" + fracsim::format_double(theta) +
                                         "_d" + std::to_string(d) + ".csv"));
      fracsim::write_time_difference_csv(tds, rows);
    }
  }
  std::cout << "kernel suite written to " << out << "\n";
  return kExitOk;
}

int cmd_rates(const std::string& csv, const std::vector<std::string>& columns,
              double lo, double hi, double shift, const std::vector<double>& expect) {
  const fracsim::CsvTable table = fracsim::read_csv(csv);
  const std::vector<double> t = table.column(table.columns.front());
  json out = json::array();
  bool in_band = true;
  for (const auto& name : columns) {
    const std::vector<double> v = table.column(name);
    const fracsim::RateFit fit = fracsim::fit_decay_rate(t, v, lo, hi, shift);
    json j{{"column", name},
           {"window", {lo, hi}},
           {"shift", shift},
           {"slope", fit.slope},
           {"intercept", fit.intercept},
           {"rms_residual", fit.rms_residual},
           {"samples", fit.samples}};
    if (expect.size() == 2) {
      j["expected"] = {expect[0], expect[1]};
      const bool ok = fit.slope >= std::min(expect[0], expect[1]) &&
                      fit.slope <= std::max(expect[0], expect[1]);
      j["within"] = ok;
      in_band = in_band && ok;
    }
    out.push_back(j);
  }
  std::cout << out.dump(2) << "\n";
  return in_band ? kExitOk : kExitCheck;
}

int cmd_driftcheck(const std::string& matrix_path) {
  const fracsim::DriftMatrix D = fracsim::read_matrix_file(matrix_path);
  const fracsim::DriftVerdict v = fracsim::check_and_decompose(D);
  std::cout << fracsim::verdict_to_json(v) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracsim: pseudospectral experiments for fractional dissipation models"};
  app.require_subcommand(1);

  std::vector<std::string> config_paths;
  std::string out = "out";
  int jobs = 1;
  long seed = 0;  // reserved for stochastic initial data
  bool check = false;

  auto* sim = app.add_subcommand("simulate", "run experiments and emit diagnostics CSV");
  sim->add_option("--config", config_paths, "experiment config file(s)")->required();
  sim->add_option("--out", out, "output directory");
  sim->add_option("--jobs", jobs, "concurrent runs for sweeps");
  sim->add_option("--seed", seed, "random seed (reserved)");
  sim->add_flag("--self-check", check, "verify run invariants, exit 4 on failure");

  std::string kernel_config;
  auto* ker = app.add_subcommand("kernel", "kernel identity and decay-rate suite");
  ker->add_option("--config", kernel_config, "kernel suite config file");
  ker->add_option("--out", out, "output directory");
  ker->add_option("--seed", seed, "random seed (reserved)");

  std::string rates_csv;
  std::vector<std::string> rate_columns;
  std::vector<double> window{0.0, 0.0};
  std::vector<double> expect;
  double shift = 0.0;
  auto* rat = app.add_subcommand("rates", "fit log-log decay slopes from a CSV");
  rat->add_option("--csv", rates_csv, "input CSV (first column is time)")->required();
  rat->add_option("--column", rate_columns, "value column(s) to fit")->required();
  rat->add_option("--window", window, "fit window t_lo t_hi")->expected(2)->required();
  rat->add_option("--shift", shift, "fit against ln(t + shift)");
  rat->add_option("--expect", expect, "slope band lo hi; exit 4 when outside")->expected(2);

  std::string matrix_path;
  auto* drf = app.add_subcommand("driftcheck", "admissibility test for a drift matrix");
  drf->add_option("--matrix", matrix_path, "text file with matrix rows")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(config_paths, out, jobs, check);
    if (ker->parsed()) return cmd_kernel(kernel_config, out);
    if (rat->parsed()) return cmd_rates(rates_csv, rate_columns, window[0], window[1], shift, expect);
    if (drf->parsed()) return cmd_driftcheck(matrix_path);
  } catch (const fracsim::NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const fracsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
