#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "fracsim/fft.hpp"
#include "fracsim/grid.hpp"
#include "fracsim/par.hpp"

namespace fracsim {

// Largest retained mode under the 2/3 rule. Chosen so that aliases of
// products of retained modes always land outside the retained band.
inline int dealias_cutoff(int n) { return (n - 1) / 3; }

// Applies a real multiplier m(k, j) coefficient-wise. The functor receives
// the physical wavevector and the signed integer modes.
template <class F>
void apply_real_multiplier(Spectrum& s, F&& m) {
  const SpectrumLayout lay(s.grid);
  const GridSpec g = s.grid;
  auto* c = s.c.data();
  par::for_each(static_cast<std::ptrdiff_t>(s.size()), [&](std::ptrdiff_t i) {
    const auto j = lay.modes(static_cast<std::size_t>(i));
    std::array<double, 3> k{g.wavenumber(j[0]), g.wavenumber(j[1]), g.wavenumber(j[2])};
    c[i] *= m(k, j);
  });
}

// out = i * k_axis * in, with the Nyquist mode of every axis zeroed so the
// derivative of a real field stays real.
void axis_derivative(const Spectrum& in, Spectrum& out, int axis);

// Zeroes all modes with |j| > cutoff on any axis.
void truncate_two_thirds(Spectrum& s);

// Synthesizes a real field centered on the box from a radial profile of |k|:
// f(x_i) = (2L)^-d * sum_j m(|k_j|) exp(i k_j . x_i).
Field synthesize_radial_profile(const GridSpec& g, const std::function<double(double)>& m);

// Periodic convolution on the centered box: h(x) = int f(y) g(x - y) dy.
Field spectral_convolve(const Field& f, const Field& g);

// (-Delta)^(theta/2) f via the |k|^theta multiplier; |k|^theta at k = 0 is 0.
Field fractional_laplacian(const Field& f, double theta);

// Spectral partial derivative along one axis / all axes.
Field gradient_axis(const Field& f, int axis);
std::vector<Field> gradient(const Field& f);

// Solves -Lap(psi) = rho - mean(rho) with zero-mean gauge.
Field poisson_solve(const Field& rho);

// Multiplier -1/|k| on nonzero modes; requires d = 2.
Field half_laplacian_inverse(const Field& rho);

// (-d2 f, d1 f); requires d = 2.
std::array<Field, 2> perp_gradient(const Field& f);

// Pointwise product with 2/3-rule truncation of both inputs and the result.
Field dealiased_product(const Field& f, const Field& g);

void require_finite(const Field& f, const char* what);

}  // namespace fracsim
