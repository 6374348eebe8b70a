#include "fracsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "fracsim/errors.hpp"
#include "fracsim/io.hpp"
#include "fracsim/kernels.hpp"
#include "fracsim/spectral.hpp"

namespace fracsim {

Field initial_field(const ExperimentConfig& cfg) {
  switch (cfg.init) {
    case InitialProfile::kernel: {
      KernelSample ks = heat_kernel(cfg.model.theta, cfg.init_kernel_time, cfg.grid);
      Field f = std::move(ks.values);
      par::scale(f.v, cfg.amplitude);
      return f;
    }
    case InitialProfile::bumps: {
      // Two offset Gaussian bumps; breaks radial symmetry so rotational
      // drifts actually advect.
      const GridSpec& g = cfg.grid;
      Field f(g);
      const double L = g.box;
      std::array<double, 3> c1{0.15 * L, 0.05 * L, 0.0};
      std::array<double, 3> c2{-0.15 * L, -0.10 * L, 0.0};
      const std::size_t n = g.size();
      const double norm = cfg.amplitude / std::pow(2.0 * kPi, 0.5 * g.d);
      par::for_each(static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t i) {
        const auto x = g.coords(static_cast<std::size_t>(i));
        double r1 = 0.0, r2 = 0.0;
        for (int a = 0; a < g.d; ++a) {
          r1 += (x[a] - c1[a]) * (x[a] - c1[a]);
          r2 += (x[a] - c2[a]) * (x[a] - c2[a]);
        }
        f.v[i] = norm * (std::exp(-0.5 * r1) + 0.7 * std::exp(-0.25 * r2));
      });
      return f;
    }
  }
  throw ConfigError("initial_field: unknown profile");
}

Trajectory run_experiment(const ExperimentConfig& cfg, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  Field rho0 = initial_field(cfg);
  Trajectory traj = run(rho0, cfg.model, cfg.solver, cfg.diagnostics);

  {
    std::ofstream csv(fs::path(out_dir) / (cfg.name + ".csv"));
    if (!csv) throw ConfigError("cannot write csv in '" + out_dir + "'");
    write_diagnostics_csv(csv, traj.records);
  }

  for (double want : cfg.snapshot_times) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < traj.times.size(); ++i)
      if (std::abs(traj.times[i] - want) < std::abs(traj.times[best] - want)) best = i;
    if (traj.snapshots.empty()) break;
    char idx[16];
    std::snprintf(idx, sizeof(idx), "%04zu", best);
    SnapshotMeta meta{cfg.grid, traj.times[best], cfg.model.theta, to_string(cfg.model.kind)};
    write_snapshot((fs::path(out_dir) / (cfg.name + "_snap_" + idx)).string(),
                   traj.snapshots[best], meta);
  }
  return traj;
}

std::vector<std::string> self_check(const Trajectory& traj) {
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < traj.records.size(); ++i) {
    const auto& r = traj.records[i];
    const double drift = std::abs(r.mass - traj.initial_mass) / traj.initial_mass;
    if (drift > 1e-10)
      bad.push_back("mass drift " + format_double(drift) + " at t = " + format_double(r.t));
    const double linf = r.lp_norms.at(std::numeric_limits<double>::infinity());
    if (r.min_value < -kPositivityTolerance * linf)
      bad.push_back("positivity loss at t = " + format_double(r.t));
    if (r.entropy_p < -1e-8)
      bad.push_back("entropy " + format_double(r.entropy_p) + " at t = " + format_double(r.t));
    if (r.ck_residual < -1e-6)
      bad.push_back("ck residual " + format_double(r.ck_residual) +
                    " at t = " + format_double(r.t));
  }
  return bad;
}

int run_sweep(const std::vector<ExperimentConfig>& configs, const std::string& out_dir,
              int jobs, bool check) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  struct Result {
    std::string status = "not run";
    double t_final = 0.0;
    double mass_final = 0.0;
  };
  std::vector<Result> results(configs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<int> worst{0};

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= configs.size()) return;
      try {
        Trajectory traj = run_experiment(configs[i], out_dir);
        results[i].t_final = traj.times.back();
        results[i].mass_final = traj.records.back().mass;
        if (check) {
          const auto bad = self_check(traj);
          if (!bad.empty()) {
            results[i].status = "check failed: " + bad.front();
            int expect = worst.load();
            while (expect < 4 && !worst.compare_exchange_weak(expect, 4)) {
            }
            continue;
          }
        }
        results[i].status = "ok";
      } catch (const NumericalAbort& e) {
        results[i].status = std::string("aborted: ") + e.what();
        int expect = worst.load();
        while (expect < 3 && !worst.compare_exchange_weak(expect, 3)) {
        }
      } catch (const std::exception& e) {
        results[i].status = std::string("error: ") + e.what();
        int expect = worst.load();
        while (expect < 2 && !worst.compare_exchange_weak(expect, 2)) {
        }
      }
    }
  };

  const int nworkers = std::max(1, std::min<int>(jobs, static_cast<int>(configs.size())));
  std::vector<std::thread> pool;
  pool.reserve(nworkers);
  for (int w = 0; w < nworkers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ofstream summary(fs::path(out_dir) / "sweep_summary.csv");
  summary << "name,status,t_final,mass_final\n";
  for (std::size_t i = 0; i < configs.size(); ++i) {
    std::string status = results[i].status;
    std::replace(status.begin(), status.end(), ',', ';');
    summary << configs[i].name << ",\"" << status << "\"," << format_double(results[i].t_final)
            << ',' << format_double(results[i].mass_final) << '\n';
  }
  return worst.load();
}

}  // namespace fracsim
