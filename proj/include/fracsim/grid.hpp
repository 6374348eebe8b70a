#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "fracsim/errors.hpp"

namespace fracsim {

inline constexpr double kPi = 3.14159265358979323846;

// Uniform periodic grid on the centered box [-L, L)^d.
// Samples per axis: x_i = -L + i*h with h = 2L/N; the origin sits at i = N/2.
// Wavenumbers: k_j = (pi/L) * j with integer j in [-N/2, N/2).
struct GridSpec {
  int d = 1;
  int n = 0;
  double box = 0.0;  // half-width L

  double spacing() const { return 2.0 * box / n; }
  double coord(int i) const { return -box + spacing() * i; }
  double wavenumber(int j) const { return kPi * j / box; }
  double cell_volume() const {
    double w = 1.0;
    for (int a = 0; a < d; ++a) w *= spacing();
    return w;
  }
  double volume() const {
    double w = 1.0;
    for (int a = 0; a < d; ++a) w *= 2.0 * box;
    return w;
  }
  std::size_t size() const {
    std::size_t s = 1;
    for (int a = 0; a < d; ++a) s *= static_cast<std::size_t>(n);
    return s;
  }

  // Coordinates of a flat row-major index (axis 0 slowest).
  std::array<double, 3> coords(std::size_t flat) const {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int a = d - 1; a >= 0; --a) {
      x[a] = coord(static_cast<int>(flat % n));
      flat /= n;
    }
    return x;
  }

  void validate() const {
    if (d < 1 || d > 3) throw ConfigError("grid: dimension must be 1, 2 or 3");
    if (n < 2 || n % 2 != 0) throw ConfigError("grid: n must be even and >= 2");
    if (!(box > 0.0)) throw ConfigError("grid: box half-width must be positive");
  }

  bool operator==(const GridSpec&) const = default;
};

// Real scalar samples on a GridSpec, row-major with axis 0 slowest.
struct Field {
  GridSpec grid;
  std::vector<double> v;

  Field() = default;
  explicit Field(const GridSpec& g) : grid(g), v(g.size(), 0.0) {}
  Field(const GridSpec& g, std::vector<double> values) : grid(g), v(std::move(values)) {
    if (v.size() != g.size()) throw ConfigError("field: value count does not match grid");
  }

  std::size_t size() const { return v.size(); }
  double* data() { return v.data(); }
  const double* data() const { return v.data(); }
};

// Fractional order with its admissible range.
struct FracParams {
  double theta = 1.0;
  int d = 1;
  void validate() const {
    if (!(theta > 0.0) || theta > 2.0) throw ConfigError("theta must lie in (0, 2]");
    if (d < 1 || d > 3) throw ConfigError("dimension must be 1, 2 or 3");
  }
};

inline void require_theta(double theta) { FracParams{theta, 1}.validate(); }

}  // namespace fracsim
