#include "fracsim/par.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

namespace fracsim::par {

namespace {

std::atomic<Backend> g_backend = [] {
  if (const char* env = std::getenv("FRACSIM_BACKEND"))
    if (env == std::string_view("serial")) return Backend::serial;
  return Backend::openmp;
}();

// Block size for thread-count-independent reductions.
constexpr std::size_t kBlock = 8192;

template <class BlockOp, class Combine>
auto blocked_reduce(std::size_t n, double init, BlockOp block, Combine combine) {
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks, init);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nblocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(lo + kBlock, n);
    partial[b] = block(lo, hi);
  }
  double acc = init;
  for (double p : partial) acc = combine(acc, p);
  return acc;
}

}  // namespace

Backend backend() { return g_backend.load(std::memory_order_relaxed); }
void set_backend(Backend b) { g_backend.store(b, std::memory_order_relaxed); }
bool use_openmp() { return backend() == Backend::openmp; }

namespace serial {

double sum(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

double sum_abs(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

double sum_abs_pow(std::span<const double> v, double p) {
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), p);
  return s;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double min(std::span<const double> v) {
  double m = std::numeric_limits<double>::infinity();
  for (double x : v) m = std::min(m, x);
  return m;
}

double max(std::span<const double> v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  return m;
}

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

void scale(std::span<double> v, double a) {
  for (double& x : v) x *= a;
}

void add_scaled(std::span<double> y, double a, std::span<const double> x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
}

}  // namespace serial

namespace omp {

double sum(std::span<const double> v) {
  return blocked_reduce(
      v.size(), 0.0,
      [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
      },
      [](double a, double b) { return a + b; });
}

double sum_abs(std::span<const double> v) {
  return blocked_reduce(
      v.size(), 0.0,
      [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += std::abs(v[i]);
        return s;
      },
      [](double a, double b) { return a + b; });
}

double sum_abs_pow(std::span<const double> v, double p) {
  return blocked_reduce(
      v.size(), 0.0,
      [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += std::pow(std::abs(v[i]), p);
        return s;
      },
      [](double a, double b) { return a + b; });
}

double max_abs(std::span<const double> v) {
  return blocked_reduce(
      v.size(), 0.0,
      [&](std::size_t lo, std::size_t hi) {
        double m = 0.0;
        for (std::size_t i = lo; i < hi; ++i) m = std::max(m, std::abs(v[i]));
        return m;
      },
      [](double a, double b) { return std::max(a, b); });
}

double min(std::span<const double> v) {
  return blocked_reduce(
      v.size(), std::numeric_limits<double>::infinity(),
      [&](std::size_t lo, std::size_t hi) {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t i = lo; i < hi; ++i) m = std::min(m, v[i]);
        return m;
      },
      [](double a, double b) { return std::min(a, b); });
}

double max(std::span<const double> v) {
  return blocked_reduce(
      v.size(), -std::numeric_limits<double>::infinity(),
      [&](std::size_t lo, std::size_t hi) {
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t i = lo; i < hi; ++i) m = std::max(m, v[i]);
        return m;
      },
      [](double a, double b) { return std::max(a, b); });
}

bool all_finite(std::span<const double> v) {
  return blocked_reduce(
             v.size(), 1.0,
             [&](std::size_t lo, std::size_t hi) {
               for (std::size_t i = lo; i < hi; ++i)
                 if (!std::isfinite(v[i])) return 0.0;
               return 1.0;
             },
             [](double a, double b) { return std::min(a, b); }) > 0.5;
}

void scale(std::span<double> v, double a) {
  double* p = v.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(v.size()); ++i) p[i] *= a;
}

void add_scaled(std::span<double> y, double a, std::span<const double> x) {
  double* py = y.data();
  const double* px = x.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(y.size()); ++i) py[i] += a * px[i];
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  const double* pa = a.data();
  const double* pb = b.data();
  double* po = out.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(out.size()); ++i) po[i] = pa[i] * pb[i];
}

}  // namespace omp

#define FRACSIM_DISPATCH(fn, ...) \
  return use_openmp() ? omp::fn(__VA_ARGS__) : serial::fn(__VA_ARGS__)

double sum(std::span<const double> v) { FRACSIM_DISPATCH(sum, v); }
double sum_abs(std::span<const double> v) { FRACSIM_DISPATCH(sum_abs, v); }
double sum_abs_pow(std::span<const double> v, double p) { FRACSIM_DISPATCH(sum_abs_pow, v, p); }
double max_abs(std::span<const double> v) { FRACSIM_DISPATCH(max_abs, v); }
double min(std::span<const double> v) { FRACSIM_DISPATCH(min, v); }
double max(std::span<const double> v) { FRACSIM_DISPATCH(max, v); }
bool all_finite(std::span<const double> v) { FRACSIM_DISPATCH(all_finite, v); }
void scale(std::span<double> v, double a) { FRACSIM_DISPATCH(scale, v, a); }
void add_scaled(std::span<double> y, double a, std::span<const double> x) {
  FRACSIM_DISPATCH(add_scaled, y, a, x);
}
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  FRACSIM_DISPATCH(multiply, a, b, out);
}

#undef FRACSIM_DISPATCH

}  // namespace fracsim::par
