#include "oracles.hpp"

#include <cmath>
#include <vector>

#include "fracsim/spectral.hpp"

namespace oracles {

using namespace fracsim;

Field padded_product(const Field& f, const Field& g) {
  const GridSpec small = f.grid;
  GridSpec big = small;
  big.n = 2 * small.n;
  const Fft& fft_s = Fft::plan_for(small);
  const Fft& fft_b = Fft::plan_for(big);

  const int cut = dealias_cutoff(small.n);
  auto lift = [&](const Field& x) {
    Spectrum s = fft_s.forward(x);
    truncate_two_thirds(s);
    Spectrum bs(big);
    const SpectrumLayout lay_s(small);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto j = lay_s.modes(i);
      bool keep = true;
      for (int a = 0; a < small.d; ++a)
        if (std::abs(j[a]) > cut) keep = false;
      if (!keep) continue;
      // Same box, so mode j has the same wavenumber on both grids.
      std::size_t flat = 0;
      for (int a = 0; a < small.d - 1; ++a) {
        const int idx = j[a] >= 0 ? j[a] : j[a] + big.n;
        flat = flat * big.n + idx;
      }
      flat = flat * (big.n / 2 + 1) + j[small.d - 1];
      bs.c[flat] = s.c[i];
    }
    return fft_b.inverse(bs);
  };

  Field pf = lift(f);
  Field pg = lift(g);
  Field prod(big);
  for (std::size_t i = 0; i < prod.size(); ++i) prod.v[i] = pf.v[i] * pg.v[i];
  Spectrum ps = fft_b.forward(prod);

  // Read the retained band back onto the small grid.
  Spectrum out(small);
  const SpectrumLayout lay_s(small);
  const SpectrumLayout lay_b(big);
  (void)lay_b;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto j = lay_s.modes(i);
    bool keep = true;
    for (int a = 0; a < small.d; ++a)
      if (std::abs(j[a]) > cut) keep = false;
    if (!keep) {
      out.c[i] = 0.0;
      continue;
    }
    std::size_t flat = 0;
    for (int a = 0; a < small.d - 1; ++a) {
      const int idx = j[a] >= 0 ? j[a] : j[a] + big.n;
      flat = flat * big.n + idx;
    }
    flat = flat * (big.n / 2 + 1) + j[small.d - 1];
    out.c[i] = ps.c[flat];
  }
  return fft_s.inverse(out);
}

double periodized_gaussian_1d(double x, double s, double L) {
  if (s < 3.0 * (L / kPi) * (L / kPi)) {
    const int m_max = static_cast<int>(std::ceil(std::sqrt(600.0 * s) / (2.0 * L))) + 3;
    double acc = 0.0;
    for (int m = -m_max; m <= m_max; ++m) {
      const double y = x + 2.0 * L * m;
      acc += std::exp(-y * y / (4.0 * s));
    }
    return acc / std::sqrt(4.0 * kPi * s);
  }
  const int j_max = static_cast<int>(std::ceil(std::sqrt(200.0 / s) * L / kPi)) + 2;
  double acc = 1.0;
  for (int j = 1; j <= j_max; ++j) {
    const double k = kPi * j / L;
    acc += 2.0 * std::exp(-s * k * k) * std::cos(k * x);
  }
  return acc / (2.0 * L);
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

}  // namespace

Field periodized_closed_form(double theta, double t, const GridSpec& grid) {
  Field out(grid);
  const double L = grid.box;
  const int n = grid.n;

  // Per-axis 1-d profiles are enough: both closed forms factor through
  // products of 1-d theta functions.
  auto fill_from_axis_profiles = [&](const std::function<double(double)>& prof1d,
                                     double extra) {
    std::vector<double> axis(n);
    for (int i = 0; i < n; ++i) axis[i] = prof1d(grid.coord(i));
    if (grid.d == 1) {
      for (int i = 0; i < n; ++i) out.v[i] = axis[i] + extra;
    } else if (grid.d == 2) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.v[static_cast<std::size_t>(i) * n + j] = axis[i] * axis[j];
      for (auto& v : out.v) v += extra;
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            out.v[(static_cast<std::size_t>(i) * n + j) * n + k] = axis[i] * axis[j] * axis[k];
      for (auto& v : out.v) v += extra;
    }
  };

  if (theta == 2.0) {
    fill_from_axis_profiles([&](double x) { return periodized_gaussian_1d(x, t, L); }, 0.0);
    return out;
  }
  if (theta != 1.0) throw ConfigError("periodized_closed_form: theta must be 1 or 2");

  // Subordination: exp(-t|k|) = int_0^inf exp(-s k^2) mu_t(s) ds with the
  // 1/2-stable density mu_t; substituting u = t/(2 sqrt(s)) gives
  //   G_per(x) = (2/sqrt(pi)) int_umin^inf e^(-u^2) Theta(x, t^2/(4u^2)) du
  //            + (2L)^-d erf(umin),
  // where for s >= S = (4L)^2 the theta function is flat to machine accuracy.
  const double S = (4.0 * L) * (4.0 * L);
  const double umin = t / (2.0 * std::sqrt(S));
  const int nodes = 240;
  std::vector<double> gx, gw;
  gauss_legendre(nodes, gx, gw);
  const double a = umin, b = umin + 9.0;

  std::vector<double> axis(n, 0.0);
  std::vector<double> prof(n);
  double flat_part = 0.0;
  if (grid.d == 1) {
    for (int q = 0; q < nodes; ++q) {
      const double u = 0.5 * (b - a) * gx[q] + 0.5 * (b + a);
      const double w = gw[q] * 0.5 * (b - a) * std::exp(-u * u) * 2.0 / std::sqrt(kPi);
      const double s = t * t / (4.0 * u * u);
      for (int i = 0; i < n; ++i) axis[i] += w * periodized_gaussian_1d(grid.coord(i), s, L);
    }
    flat_part = std::erf(umin) / (2.0 * L);
    for (int i = 0; i < n; ++i) out.v[i] = axis[i] + flat_part;
    return out;
  }

  // d >= 2: accumulate the outer product of per-axis profiles per node.
  std::fill(out.v.begin(), out.v.end(), 0.0);
  for (int q = 0; q < nodes; ++q) {
    const double u = 0.5 * (b - a) * gx[q] + 0.5 * (b + a);
    const double w = gw[q] * 0.5 * (b - a) * std::exp(-u * u) * 2.0 / std::sqrt(kPi);
    const double s = t * t / (4.0 * u * u);
    for (int i = 0; i < n; ++i) prof[i] = periodized_gaussian_1d(grid.coord(i), s, L);
    if (grid.d == 2) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          out.v[static_cast<std::size_t>(i) * n + j] += w * prof[i] * prof[j];
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            out.v[(static_cast<std::size_t>(i) * n + j) * n + k] += w * prof[i] * prof[j] * prof[k];
    }
  }
  double vol = 1.0;
  for (int axi = 0; axi < grid.d; ++axi) vol *= 2.0 * L;
  for (auto& v : out.v) v += std::erf(umin) / vol;
  return out;
}

Field from_function(const GridSpec& grid,
                    const std::function<double(std::array<double, 3>)>& fn) {
  Field f(grid);
  for (std::size_t i = 0; i < f.size(); ++i) f.v[i] = fn(grid.coords(i));
  return f;
}

Field random_band_limited(const GridSpec& grid, int jmax, unsigned seed, bool zero_mean) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Field f(grid);
  // Superpose cosine modes with random phases; stays real and band-limited.
  const int nmodes = 4 * jmax * grid.d + 8;
  std::uniform_int_distribution<int> ji(-jmax, jmax);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
  for (int m = 0; m < nmodes; ++m) {
    std::array<int, 3> j{0, 0, 0};
    bool all_zero = true;
    for (int a = 0; a < grid.d; ++a) {
      j[a] = ji(rng);
      if (j[a] != 0) all_zero = false;
    }
    if (zero_mean && all_zero) continue;
    const double amp = gauss(rng) / nmodes;
    const double phase = ph(rng);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto x = grid.coords(i);
      double arg = phase;
      for (int a = 0; a < grid.d; ++a) arg += grid.wavenumber(j[a]) * x[a];
      f.v[i] += amp * std::cos(arg);
    }
  }
  return f;
}

}  // namespace oracles
