#include "fracsim/integrator.hpp"

#include <cmath>

#include "fracsim/errors.hpp"
#include "fracsim/spectral.hpp"

namespace fracsim {

void SolverConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("solver.dt: must be positive");
  if (!(t_end > 0.0)) throw ConfigError("solver.t_end: must be positive");
  if (output_every < 1) throw ConfigError("solver.output_every: must be >= 1");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0))
    throw ConfigError("solver.cfl_safety: must lie in (0, 1]");
}

namespace {

struct Stepper {
  const ModelSpec& model;
  double dt;
  double cfl_safety;
  std::vector<double> semigroup;  // exp(-dt kappa |k|^theta), exactly 1 at k = 0
  Spectrum n1, n2, pred;
  DriftWorkspace ws;

  Stepper(const GridSpec& g, const ModelSpec& m, double dt_, double cfl)
      : model(m), dt(dt_), cfl_safety(cfl), n1(g), n2(g), pred(g) {
    const SpectrumLayout lay(g);
    semigroup.resize(Spectrum::spectrum_size(g));
    const double kappa = m.dissipation();
    const double theta = m.theta;
    for (std::size_t i = 0; i < semigroup.size(); ++i) {
      const auto j = lay.modes(i);
      double k2 = 0.0;
      for (int a = 0; a < g.d; ++a) {
        const double k = g.wavenumber(j[a]);
        k2 += k * k;
      }
      semigroup[i] = k2 == 0.0 ? 1.0 : std::exp(-dt * kappa * std::pow(k2, 0.5 * theta));
    }
  }

  // Advances the spectral state in place; returns the advective sup.
  double advance(Spectrum& state, long step_index) {
    const double sup = assemble_drift(state, model, n1, ws);
    if (!std::isfinite(sup)) throw NumericalAbort(step_index, "non-finite state");
    if (model.drift_enabled) {
      const double h = state.grid.spacing();
      const double dt_max = cfl_safety * h / std::max(1.0, sup);
      if (dt > dt_max)
        throw NumericalAbort(step_index, "CFL violation: dt = " + std::to_string(dt) +
                                             " exceeds " + std::to_string(dt_max));
    }
    auto* s = state.c.data();
    auto* a1 = n1.c.data();
    auto* p = pred.c.data();
    const double* e = semigroup.data();
    const double dth = dt;
    par::for_each(static_cast<std::ptrdiff_t>(state.size()), [&](std::ptrdiff_t i) {
      p[i] = e[i] * (s[i] + dth * a1[i]);
    });
    if (model.drift_enabled) {
      assemble_drift(pred, model, n2, ws);
      auto* a2 = n2.c.data();
      par::for_each(static_cast<std::ptrdiff_t>(state.size()), [&](std::ptrdiff_t i) {
        s[i] = e[i] * s[i] + 0.5 * dth * (e[i] * a1[i] + a2[i]);
      });
    } else {
      par::for_each(static_cast<std::ptrdiff_t>(state.size()),
                    [&](std::ptrdiff_t i) { s[i] = e[i] * s[i]; });
    }
    return sup;
  }
};

void check_state(const Field& rho, bool enforce_positivity, long step_index) {
  if (!par::all_finite(rho.v)) throw NumericalAbort(step_index, "non-finite state");
  if (enforce_positivity) {
    const double floor = -kPositivityTolerance * par::max_abs(rho.v);
    if (par::min(rho.v) < floor)
      throw NumericalAbort(step_index, "positivity loss: min rho below tolerance");
  }
}

}  // namespace

Field step(const Field& rho, const ModelSpec& model, double dt, double cfl_safety) {
  model.validate();
  if (!(dt > 0.0)) throw ConfigError("step: dt must be positive");
  require_finite(rho, "step");
  const Fft& fft = Fft::plan_for(rho.grid);
  Spectrum state = fft.forward(rho);
  Stepper st(rho.grid, model, dt, cfl_safety);
  st.advance(state, 0);
  return fft.inverse(state);
}

Trajectory run(const Field& rho0, const ModelSpec& model, const SolverConfig& solver,
               const DiagnosticsConfig& diag) {
  model.validate();
  solver.validate();
  diag.validate();
  require_finite(rho0, "run");
  check_state(rho0, true, 0);

  Trajectory traj;
  traj.model = model;
  traj.initial_mass = par::sum(rho0.v) * rho0.grid.cell_volume();
  if (!(traj.initial_mass > 0.0)) throw ConfigError("run: initial mass must be positive");

  const Fft& fft = Fft::plan_for(rho0.grid);
  Spectrum state = fft.forward(rho0);
  Stepper st(rho0.grid, model, solver.dt, solver.cfl_safety);

  const long nsteps = std::lround(solver.t_end / solver.dt);
  Field rho(rho0.grid);
  for (long n = 0;; ++n) {
    if (n % solver.output_every == 0 || n == nsteps) {
      const double t = static_cast<double>(n) * solver.dt;
      fft.inverse(state, rho);
      check_state(rho, model.drift_enabled, n);
      traj.times.push_back(t);
      traj.records.push_back(compute_record(rho, t, traj.initial_mass, model.theta, diag));
      if (solver.store_snapshots) traj.snapshots.push_back(rho);
    }
    if (n == nsteps) break;
    st.advance(state, n);
  }
  return traj;
}

}  // namespace fracsim
