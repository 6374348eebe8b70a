#pragma once

#include <functional>
#include <random>

#include "fracsim/fft.hpp"
#include "fracsim/grid.hpp"

// Test-side reference computations, independent of the production paths they
// check.
namespace oracles {

// Exact product of the 2/3-truncated inputs projected back to the retained
// band, computed by zero-padding onto a grid with twice the resolution.
fracsim::Field padded_product(const fracsim::Field& f, const fracsim::Field& g);

// Periodized 1-d Gaussian heat profile: sum_m (4 pi s)^(-1/2) exp(-(x+2Lm)^2/4s),
// evaluated by direct image sums (small s) or the dual cosine series (large s).
double periodized_gaussian_1d(double x, double s, double L);

// Periodization of the whole-space closed-form kernel (theta = 1 or 2) over
// the box lattice, via theta functions and, for theta = 1, the subordination
// integral. Accurate to ~1e-12 absolute; no FFT involved.
fracsim::Field periodized_closed_form(double theta, double t, const fracsim::GridSpec& grid);

// Field from a pointwise function of the coordinates.
fracsim::Field from_function(const fracsim::GridSpec& grid,
                             const std::function<double(std::array<double, 3>)>& fn);

// Smooth random band-limited field: modes |j| <= jmax per axis with Gaussian
// weights, deterministic in the seed.
fracsim::Field random_band_limited(const fracsim::GridSpec& grid, int jmax, unsigned seed,
                                   bool zero_mean = false);

}  // namespace oracles
