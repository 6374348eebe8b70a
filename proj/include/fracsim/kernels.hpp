#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "fracsim/grid.hpp"

namespace fracsim {

// Sampled fractional heat kernel G_theta(., t) on a centered periodic box.
// The synthesis fixes the zero mode to (2L)^-d, so the discrete integral over
// the box is exactly 1.
struct KernelSample {
  double theta = 0.0;
  double t = 0.0;
  GridSpec grid;
  Field values;
};

KernelSample heat_kernel(double theta, double t, const GridSpec& grid);

// Whole-space closed forms: Gaussian (theta = 2) and Poisson/Cauchy kernel
// (theta = 1) at radius r.
double kernel_closed_form(double theta, int d, double t, double r);

// Evaluates lambda^d G(lambda x, lambda^theta t) against G(x, t), the left
// side on the grid scaled by 1/lambda so both sides sample the same physical
// points. Errors are taken over the common region |x| <= L / (2 max(lambda,1)).
struct SelfSimilarityResult {
  double max_error = 0.0;
  double l1_error = 0.0;
};
SelfSimilarityResult self_similarity_check(double theta, double t, double lambda,
                                           const GridSpec& grid);

// Ranges of G * t^(d/theta) over |x| <= K t^(1/theta) and of G |x|^(d+theta) / t
// beyond it. The outer range is only meaningful for theta < 2.
struct PointwiseBoundsReport {
  double inner_min = 0.0, inner_max = 0.0;
  double outer_min = 0.0, outer_max = 0.0;
};
PointwiseBoundsReport pointwise_bounds_report(double theta, double t, double K,
                                              const GridSpec& grid);

// sup over the grid of |grad G| / (min(t^(-1/theta), |x|^-1) G).
double gradient_bound_report(double theta, double t, const GridSpec& grid);

// L1 gaps D(s) = ||G(s + 1/theta) - G(s)||_1 with the two rate-compensated
// columns. Each s gets its own box, L = 20 (s + 1/theta)^(1/theta).
struct TimeDifferenceRow {
  double s = 0.0;
  double D = 0.0;
  double D_halfrate = 0.0;  // D * (1 + theta s)^(1/2)
  double D_fullrate = 0.0;  // D * (1 + s)
};
std::vector<TimeDifferenceRow> time_difference_decay(double theta, int d,
                                                     std::span<const double> s_values,
                                                     int n = 256);

// CSV with header "s,D,D_halfrate,D_fullrate".
void write_time_difference_csv(std::ostream& os, std::span<const TimeDifferenceRow> rows);

}  // namespace fracsim
