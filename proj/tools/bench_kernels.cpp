// Timing comparison between the serial reference kernels and the OpenMP
// variants, plus an end-to-end RHS assembly at both settings.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "fracsim/fft.hpp"
#include "fracsim/models.hpp"
#include "fracsim/par.hpp"
#include "fracsim/spectral.hpp"

using namespace fracsim;
using Clock = std::chrono::steady_clock;

namespace {

double time_ms(int reps, const std::function<void()>& fn) {
  fn();  // warm up
  const auto t0 = Clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = Clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, double serial_ms, double omp_ms) {
  std::printf("%-28s %10.3f ms %10.3f ms   x%.2f\n", name, serial_ms, omp_ms,
              serial_ms / omp_ms);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", omp_get_max_threads());
  std::printf("%-28s %13s %13s %s\n", "kernel", "serial", "openmp", "speedup");

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);

  const std::size_t n = 1 << 21;
  std::vector<double> a(n), b(n), c(n);
  for (auto& x : a) x = dist(rng);
  for (auto& x : b) x = dist(rng);

  report("sum (2M)", time_ms(20, [&] { par::serial::sum(a); }),
         time_ms(20, [&] { par::omp::sum(a); }));
  report("sum_abs_pow p=1.5 (2M)", time_ms(5, [&] { par::serial::sum_abs_pow(a, 1.5); }),
         time_ms(5, [&] { par::omp::sum_abs_pow(a, 1.5); }));
  report("max_abs (2M)", time_ms(20, [&] { par::serial::max_abs(a); }),
         time_ms(20, [&] { par::omp::max_abs(a); }));
  report("multiply (2M)", time_ms(20, [&] { par::serial::multiply(a, b, c); }),
         time_ms(20, [&] { par::omp::multiply(a, b, c); }));
  report("add_scaled (2M)", time_ms(20, [&] { par::serial::add_scaled(c, 0.5, a); }),
         time_ms(20, [&] { par::omp::add_scaled(c, 0.5, a); }));

  // Spectral pipelines, 512^2 grid.
  GridSpec g{2, 512, 20.0};
  Field f(g);
  for (auto& x : f.v) x = dist(rng);

  auto bench_backend = [&](par::Backend be) {
    par::set_backend(be);
    return time_ms(10, [&] { Field out = fractional_laplacian(f, 1.5); });
  };
  const double frac_serial = bench_backend(par::Backend::serial);
  const double frac_omp = bench_backend(par::Backend::openmp);
  report("fractional_laplacian 512^2", frac_serial, frac_omp);

  ModelSpec model;
  model.kind = ModelKind::drift_diffusion_poisson;
  model.theta = 0.8;
  model.d = 2;
  const Fft& fft = Fft::plan_for(g);
  Spectrum rho_hat = fft.forward(f);
  Spectrum out(g);
  DriftWorkspace ws;
  auto bench_rhs = [&](par::Backend be) {
    par::set_backend(be);
    return time_ms(10, [&] { assemble_drift(rho_hat, model, out, ws); });
  };
  const double rhs_serial = bench_rhs(par::Backend::serial);
  const double rhs_omp = bench_rhs(par::Backend::openmp);
  report("ddp drift assembly 512^2", rhs_serial, rhs_omp);

  par::set_backend(par::Backend::openmp);
  return 0;
}
