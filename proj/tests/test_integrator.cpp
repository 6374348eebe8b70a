#include <cmath>

#include "doctest.h"
#include "fracsim/integrator.hpp"
#include "fracsim/kernels.hpp"
#include "fracsim/spectral.hpp"
#include "oracles.hpp"

using namespace fracsim;

namespace {

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.v[i] - b.v[i]));
  return m;
}

ModelSpec ddp_model(double theta, bool drift = true) {
  ModelSpec m;
  m.kind = ModelKind::drift_diffusion_poisson;
  m.theta = theta;
  m.d = 2;
  m.drift_enabled = drift;
  return m;
}

}  // namespace

TEST_SUITE("integrator") {

TEST_CASE("linear steps are the exact semigroup") {
  GridSpec g{2, 64, 20.0};
  const double theta = 0.8;
  KernelSample k0 = heat_kernel(theta, 2.0, g);
  ModelSpec m = ddp_model(theta, /*drift=*/false);

  const double dt = 0.7;
  Field one = step(k0.values, m, dt);
  KernelSample moved = heat_kernel(theta, 2.0 + dt, g);
  CHECK(max_abs_diff(one, moved.values) < 1e-12);

  // n small steps match one big step to roundoff accumulation.
  Field many = k0.values;
  for (int i = 0; i < 8; ++i) many = step(many, m, dt / 8.0);
  CHECK(max_abs_diff(many, one) < 1e-12 * par::max_abs(one.v));
}

TEST_CASE("zero stays zero") {
  GridSpec g{2, 32, 10.0};
  Field zero(g);
  Field out = step(zero, ddp_model(1.2), 0.01);
  CHECK(par::max_abs(out.v) == 0.0);
}

TEST_CASE("step halving shows second order (Richardson ratio near 4)") {
  GridSpec g{2, 64, 20.0};
  const double theta = 0.8;
  KernelSample k0 = heat_kernel(theta, 3.0, g);
  Field rho = k0.values;
  par::scale(rho.v, 4.0);  // strong drift so the nonlinear error dominates
  ModelSpec m = ddp_model(theta);

  const double dt = 0.2;
  Field full = step(rho, m, dt);
  Field half = step(step(rho, m, dt / 2.0), m, dt / 2.0);
  Field quarter = rho;
  for (int i = 0; i < 4; ++i) quarter = step(quarter, m, dt / 4.0);

  const double e1 = max_abs_diff(full, half);
  const double e2 = max_abs_diff(half, quarter);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.3));
}

TEST_CASE("cfl violation and non-finite input are rejected") {
  GridSpec g{2, 64, 20.0};
  KernelSample k0 = heat_kernel(0.8, 1.0, g);
  Field rho = k0.values;
  par::scale(rho.v, 50.0);  // large amplitude -> strong drift velocity
  CHECK_THROWS_AS(step(rho, ddp_model(0.8), 10.0, 0.4), NumericalAbort);

  Field bad = k0.values;
  bad.v[5] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(step(bad, ddp_model(0.8), 0.01), ConfigError);
}

TEST_CASE("run: free flow matches the convolution oracle and conserves mass") {
  GridSpec g{2, 64, 20.0};
  const double theta = 1.5;
  KernelSample k0 = heat_kernel(theta, 1.0, g);
  Field rho0 = k0.values;
  par::scale(rho0.v, 0.5);

  ModelSpec m = ddp_model(theta, /*drift=*/false);
  SolverConfig sc;
  sc.dt = 0.05;
  sc.t_end = 2.0;
  sc.output_every = 10;
  DiagnosticsConfig dc;
  Trajectory traj = run(rho0, m, sc, dc);

  CHECK(traj.times.size() == 5);
  CHECK(traj.records.size() == traj.times.size());
  CHECK(traj.snapshots.size() == traj.times.size());
  for (std::size_t i = 1; i < traj.times.size(); ++i) CHECK(traj.times[i] > traj.times[i - 1]);

  KernelSample gt = heat_kernel(theta, sc.t_end, g);
  Field conv = spectral_convolve(rho0, gt.values);
  CHECK(max_abs_diff(traj.snapshots.back(), conv) < 1e-10);

  for (const auto& r : traj.records)
    CHECK(std::abs(r.mass - traj.initial_mass) <= 1e-10 * traj.initial_mass);
}

TEST_CASE("run: zero mode is constant along a nonlinear run to machine precision") {
  GridSpec g{2, 64, 20.0};
  KernelSample k0 = heat_kernel(0.8, 4.0, g);
  Field rho0 = k0.values;
  par::scale(rho0.v, 0.5);
  SolverConfig sc;
  sc.dt = 0.02;
  sc.t_end = 0.4;
  sc.output_every = 5;
  DiagnosticsConfig dc;
  Trajectory traj = run(rho0, ddp_model(0.8), sc, dc);
  // The spectral zero mode is only ever multiplied by exactly 1 and shifted
  // by exact zeros; the recorded mass re-sums the materialized field, so it
  // carries summation roundoff of the order of eps.
  const double m0 = traj.records.front().mass;
  for (const auto& r : traj.records) CHECK(std::abs(r.mass - m0) <= 1e-14 * m0);
  const Fft& fft = Fft::plan_for(g);
  const auto c0_first = fft.forward(traj.snapshots.front()).c[0];
  const auto c0_last = fft.forward(traj.snapshots.back()).c[0];
  CHECK(std::abs(c0_last - c0_first) <= 1e-14 * std::abs(c0_first));
}

TEST_CASE("run: dt halving leaves diagnostics unchanged at 1e-4") {
  GridSpec g{2, 64, 20.0};
  KernelSample k0 = heat_kernel(0.8, 4.0, g);
  Field rho0 = k0.values;
  par::scale(rho0.v, 0.5);
  ModelSpec m = ddp_model(0.8);
  DiagnosticsConfig dc;

  SolverConfig c1{0.04, 2.0, 10};
  SolverConfig c2{0.02, 2.0, 20};
  Trajectory t1 = run(rho0, m, c1, dc);
  Trajectory t2 = run(rho0, m, c2, dc);
  REQUIRE(t1.times.size() == t2.times.size());
  double num = 0.0, den = 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t1.records.size(); ++i) {
    num += std::abs(t1.records[i].lp_norms.at(inf) - t2.records[i].lp_norms.at(inf));
    den += std::abs(t1.records[i].lp_norms.at(inf));
  }
  CHECK(num / den <= 1e-4);
}

TEST_CASE("run: positivity monitor aborts a negative state") {
  GridSpec g{1, 64, 10.0};
  Field rho0 = oracles::from_function(g, [](auto x) { return std::sin(x[0]); });
  ModelSpec m;
  m.kind = ModelKind::fractional_burgers;
  m.theta = 1.5;
  m.d = 1;
  SolverConfig sc{0.01, 0.1, 1};
  DiagnosticsConfig dc;
  CHECK_THROWS_AS(run(rho0, m, sc, dc), NumericalAbort);
}

TEST_CASE("solver config validation") {
  SolverConfig sc;
  CHECK_THROWS_AS(sc.validate(), ConfigError);  // dt = 0
  sc.dt = 0.1;
  sc.t_end = -1.0;
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  sc.t_end = 1.0;
  sc.output_every = 0;
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  sc.output_every = 1;
  sc.cfl_safety = 1.5;
  CHECK_THROWS_AS(sc.validate(), ConfigError);
}

}  // TEST_SUITE
