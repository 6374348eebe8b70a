#pragma once

#include <string>
#include <vector>

#include "fracsim/config.hpp"
#include "fracsim/integrator.hpp"

namespace fracsim {

// Builds the initial state of an experiment on its grid.
Field initial_field(const ExperimentConfig& cfg);

// Runs the experiment and writes <out>/<name>.csv plus, for each requested
// snapshot time, <out>/<name>_snap_<index>.{f64,meta} at the nearest output.
Trajectory run_experiment(const ExperimentConfig& cfg, const std::string& out_dir);

// Post-run inequality checks: mass drift <= 1e-10 relative, positivity,
// E_p >= -1e-8 and Csiszar-Kullback residual >= -1e-6 at every output.
// Returns human-readable violations, empty when all hold.
std::vector<std::string> self_check(const Trajectory& traj);

// Runs several experiments concurrently (one worker per run) and writes a
// sweep_summary.csv in input order.
int run_sweep(const std::vector<ExperimentConfig>& configs, const std::string& out_dir,
              int jobs, bool check);

}  // namespace fracsim
