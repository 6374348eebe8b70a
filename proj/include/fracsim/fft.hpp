#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "fracsim/grid.hpp"

namespace fracsim {

// Half-complex spectrum of a real field. Row-major over the mode lattice with
// the last axis reduced to 0..n/2 (Hermitian symmetry). Coefficients follow
// the index-space convention c_j = (1/N^d) sum_n f_n exp(-2*pi*i*j.n/N), so a
// plain synthesis sum recovers the samples and Fourier multipliers act
// coefficient-wise.
struct Spectrum {
  GridSpec grid;
  std::vector<std::complex<double>> c;

  Spectrum() = default;
  explicit Spectrum(const GridSpec& g) : grid(g), c(spectrum_size(g)) {}

  static std::size_t spectrum_size(const GridSpec& g) {
    std::size_t s = static_cast<std::size_t>(g.n / 2 + 1);
    for (int a = 0; a < g.d - 1; ++a) s *= static_cast<std::size_t>(g.n);
    return s;
  }
  std::size_t size() const { return c.size(); }
};

// Decodes flat half-spectrum indices into signed mode integers.
struct SpectrumLayout {
  int d;
  int n;
  int last;  // n/2 + 1

  explicit SpectrumLayout(const GridSpec& g) : d(g.d), n(g.n), last(g.n / 2 + 1) {}

  std::size_t size() const {
    std::size_t s = static_cast<std::size_t>(last);
    for (int a = 0; a < d - 1; ++a) s *= static_cast<std::size_t>(n);
    return s;
  }

  // Signed mode integers j[a] in [-n/2, n/2]; last axis is 0..n/2.
  std::array<int, 3> modes(std::size_t flat) const {
    std::array<int, 3> j{0, 0, 0};
    j[d - 1] = static_cast<int>(flat % last);
    flat /= last;
    for (int a = d - 2; a >= 0; --a) {
      int idx = static_cast<int>(flat % n);
      j[a] = idx <= n / 2 ? idx : idx - n;
      flat /= n;
    }
    return j;
  }
};

// FFTW-backed transforms, one cached plan set per grid. Plan creation is
// serialized internally; execution on caller buffers is concurrency-safe.
class Fft {
 public:
  static const Fft& plan_for(const GridSpec& g);

  void forward(const Field& f, Spectrum& out) const;
  void inverse(const Spectrum& s, Field& out) const;

  Spectrum forward(const Field& f) const {
    Spectrum s(grid_);
    forward(f, s);
    return s;
  }
  Field inverse(const Spectrum& s) const {
    Field f(grid_);
    inverse(s, f);
    return f;
  }

  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;
  ~Fft();

 private:
  explicit Fft(const GridSpec& g);

  GridSpec grid_;
  void* plan_fwd_ = nullptr;
  void* plan_inv_ = nullptr;
};

}  // namespace fracsim
