#pragma once

#include <vector>

#include "fracsim/diagnostics.hpp"
#include "fracsim/grid.hpp"
#include "fracsim/models.hpp"

namespace fracsim {

// Time stepping: the fractional dissipation is applied through its exact
// semigroup factor exp(-dt kappa |k|^theta); the drift term is advanced with
// the explicit trapezoid (Heun) rule, second order in dt. With the drift
// disabled a step is exact for any dt.
struct SolverConfig {
  double dt = 0.0;
  double t_end = 0.0;
  int output_every = 1;     // diagnostics cadence in steps
  double cfl_safety = 0.4;  // advective CFL factor in (0, 1]
  bool store_snapshots = true;
  void validate() const;
};

struct Trajectory {
  ModelSpec model;
  double initial_mass = 0.0;
  std::vector<double> times;                // output times, strictly increasing
  std::vector<Field> snapshots;             // one per output time when stored
  std::vector<DiagnosticsRecord> records;   // one per output time
};

// One integrating-factor Heun step. Throws NumericalAbort if dt violates the
// advective CFL bound dt <= cfl_safety * h / max(1, sup|velocity|).
Field step(const Field& rho, const ModelSpec& model, double dt, double cfl_safety = 1.0);

// Full run with diagnostics at the configured cadence. The Fourier zero mode
// of the state is never touched by a step, so the discrete mass is conserved
// bit-exactly. Aborts on CFL violation, positivity loss beyond
// -1e-8 * max|rho|, or non-finite values.
Trajectory run(const Field& rho0, const ModelSpec& model, const SolverConfig& solver,
               const DiagnosticsConfig& diag);

inline constexpr double kPositivityTolerance = 1e-8;

}  // namespace fracsim
