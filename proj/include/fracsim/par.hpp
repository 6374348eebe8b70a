#pragma once

#include <cstddef>
#include <span>

namespace fracsim::par {

// Execution backend for the data-parallel kernels. The serial variants are
// kept as the reference implementations; tests compare the two.
enum class Backend { serial, openmp };

Backend backend();
void set_backend(Backend b);
bool use_openmp();

template <class F>
void for_each(std::ptrdiff_t count, F&& f) {
  if (use_openmp()) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) f(i);
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) f(i);
  }
}

namespace serial {
double sum(std::span<const double> v);
double sum_abs(std::span<const double> v);
double sum_abs_pow(std::span<const double> v, double p);
double max_abs(std::span<const double> v);
double min(std::span<const double> v);
double max(std::span<const double> v);
bool all_finite(std::span<const double> v);
void scale(std::span<double> v, double a);
void add_scaled(std::span<double> y, double a, std::span<const double> x);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
}  // namespace serial

namespace omp {
// Reductions use fixed-size blocks combined in block order, so the result
// does not depend on the number of threads.
double sum(std::span<const double> v);
double sum_abs(std::span<const double> v);
double sum_abs_pow(std::span<const double> v, double p);
double max_abs(std::span<const double> v);
double min(std::span<const double> v);
double max(std::span<const double> v);
bool all_finite(std::span<const double> v);
void scale(std::span<double> v, double a);
void add_scaled(std::span<double> y, double a, std::span<const double> x);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
}  // namespace omp

double sum(std::span<const double> v);
double sum_abs(std::span<const double> v);
double sum_abs_pow(std::span<const double> v, double p);
double max_abs(std::span<const double> v);
double min(std::span<const double> v);
double max(std::span<const double> v);
bool all_finite(std::span<const double> v);
void scale(std::span<double> v, double a);
void add_scaled(std::span<double> y, double a, std::span<const double> x);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);

}  // namespace fracsim::par
