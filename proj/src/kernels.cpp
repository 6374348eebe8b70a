#include "fracsim/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "fracsim/errors.hpp"
#include "fracsim/io.hpp"
#include "fracsim/spectral.hpp"

namespace fracsim {

KernelSample heat_kernel(double theta, double t, const GridSpec& grid) {
  require_theta(theta);
  if (!(t > 0.0)) throw ConfigError("heat_kernel: t must be positive");
  Field values = synthesize_radial_profile(
      grid, [theta, t](double k) { return k == 0.0 ? 1.0 : std::exp(-t * std::pow(k, theta)); });
  return KernelSample{theta, t, grid, std::move(values)};
}

double kernel_closed_form(double theta, int d, double t, double r) {
  if (!(t > 0.0)) throw ConfigError("kernel_closed_form: t must be positive");
  if (theta == 2.0) {
    return std::pow(4.0 * kPi * t, -0.5 * d) * std::exp(-r * r / (4.0 * t));
  }
  if (theta == 1.0) {
    const double a = 0.5 * (d + 1);
    return std::tgamma(a) / std::pow(kPi, a) * t / std::pow(t * t + r * r, a);
  }
  throw ConfigError("kernel_closed_form: only theta = 1 and theta = 2 have closed forms");
}

SelfSimilarityResult self_similarity_check(double theta, double t, double lambda,
                                           const GridSpec& grid) {
  require_theta(theta);
  if (!(lambda > 0.0)) throw ConfigError("self_similarity_check: lambda must be positive");
  // Left side lambda^d G(lambda x, lambda^theta t) sampled on the scaled grid:
  // scaled sample i maps to original sample i under x -> lambda x.
  KernelSample left = heat_kernel(theta, std::pow(lambda, theta) * t, grid);
  GridSpec scaled = grid;
  scaled.box = grid.box / lambda;
  KernelSample right = heat_kernel(theta, t, scaled);

  const double scale = std::pow(lambda, grid.d);
  const double rmax = grid.box / (2.0 * std::max(lambda, 1.0));
  SelfSimilarityResult res;
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = scaled.coords(i);
    double r2 = 0.0;
    for (int a = 0; a < grid.d; ++a) r2 += x[a] * x[a];
    if (r2 > rmax * rmax) continue;
    const double diff = std::abs(scale * left.values.v[i] - right.values.v[i]);
    res.max_error = std::max(res.max_error, diff);
    res.l1_error += diff;
  }
  res.l1_error *= scaled.cell_volume();
  return res;
}

PointwiseBoundsReport pointwise_bounds_report(double theta, double t, double K,
                                              const GridSpec& grid) {
  KernelSample ks = heat_kernel(theta, t, grid);
  const double rin = K * std::pow(t, 1.0 / theta);
  const double tpow = std::pow(t, static_cast<double>(grid.d) / theta);
  PointwiseBoundsReport rep;
  rep.inner_min = rep.outer_min = std::numeric_limits<double>::infinity();
  rep.inner_max = rep.outer_max = -std::numeric_limits<double>::infinity();
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = grid.coords(i);
    double r2 = 0.0;
    for (int a = 0; a < grid.d; ++a) r2 += x[a] * x[a];
    const double r = std::sqrt(r2);
    const double g = ks.values.v[i];
    if (r <= rin) {
      const double ratio = g * tpow;
      rep.inner_min = std::min(rep.inner_min, ratio);
      rep.inner_max = std::max(rep.inner_max, ratio);
    } else if (theta < 2.0) {
      // Gaussian tails are lighter than |x|^-(d+theta); skip the outer ratio
      // for theta = 2.
      const double ratio = g * std::pow(r, grid.d + theta) / t;
      rep.outer_min = std::min(rep.outer_min, ratio);
      rep.outer_max = std::max(rep.outer_max, ratio);
    }
  }
  return rep;
}

double gradient_bound_report(double theta, double t, const GridSpec& grid) {
  KernelSample ks = heat_kernel(theta, t, grid);
  std::vector<Field> dg = gradient(ks.values);
  const double tinv = std::pow(t, -1.0 / theta);
  // Ignore points where the kernel has decayed to synthesis roundoff; the
  // ratio there is 0/0 noise (Gaussian tails underflow on wide boxes).
  const double floor = 1e-12 * par::max(ks.values.v);
  double sup = 0.0;
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double g = ks.values.v[i];
    if (g <= floor) continue;
    const auto x = grid.coords(i);
    double r2 = 0.0, g2 = 0.0;
    for (int a = 0; a < grid.d; ++a) {
      r2 += x[a] * x[a];
      g2 += dg[a].v[i] * dg[a].v[i];
    }
    const double r = std::sqrt(r2);
    const double weight = r > 0.0 ? std::min(tinv, 1.0 / r) : tinv;
    sup = std::max(sup, std::sqrt(g2) / (weight * g));
  }
  return sup;
}

std::vector<TimeDifferenceRow> time_difference_decay(double theta, int d,
                                                     std::span<const double> s_values,
                                                     int n) {
  require_theta(theta);
  std::vector<TimeDifferenceRow> rows;
  rows.reserve(s_values.size());
  for (double s : s_values) {
    if (!(s > 0.0)) throw ConfigError("time_difference_decay: s must be positive");
    GridSpec g{d, n, 20.0 * std::pow(s + 1.0 / theta, 1.0 / theta)};
    KernelSample a = heat_kernel(theta, s + 1.0 / theta, g);
    KernelSample b = heat_kernel(theta, s, g);
    par::add_scaled(a.values.v, -1.0, b.values.v);
    const double D = par::sum_abs(a.values.v) * g.cell_volume();
    rows.push_back({s, D, D * std::sqrt(1.0 + theta * s), D * (1.0 + s)});
  }
  return rows;
}

void write_time_difference_csv(std::ostream& os, std::span<const TimeDifferenceRow> rows) {
  os << "s,D,D_halfrate,D_fullrate\n";
  for (const auto& r : rows) {
    os << format_double(r.s) << ',' << format_double(r.D) << ',' << format_double(r.D_halfrate)
       << ',' << format_double(r.D_fullrate) << '\n';
  }
}

}  // namespace fracsim
