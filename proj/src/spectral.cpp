#include "fracsim/spectral.hpp"

#include <cstdlib>

#include "fracsim/errors.hpp"

namespace fracsim {

void require_finite(const Field& f, const char* what) {
  if (!par::all_finite(f.v)) throw ConfigError(std::string(what) + ": field has non-finite values");
}

void axis_derivative(const Spectrum& in, Spectrum& out, int axis) {
  out.grid = in.grid;
  out.c.resize(in.c.size());
  const SpectrumLayout lay(in.grid);
  const GridSpec g = in.grid;
  const int nyq = g.n / 2;
  const auto* src = in.c.data();
  auto* dst = out.c.data();
  par::for_each(static_cast<std::ptrdiff_t>(in.size()), [&](std::ptrdiff_t i) {
    const auto j = lay.modes(static_cast<std::size_t>(i));
    if (std::abs(j[axis]) == nyq) {
      dst[i] = 0.0;
    } else {
      const double k = g.wavenumber(j[axis]);
      dst[i] = std::complex<double>(0.0, k) * src[i];
    }
  });
}

void truncate_two_thirds(Spectrum& s) {
  const SpectrumLayout lay(s.grid);
  const int cut = dealias_cutoff(s.grid.n);
  const int d = s.grid.d;
  auto* c = s.c.data();
  par::for_each(static_cast<std::ptrdiff_t>(s.size()), [&](std::ptrdiff_t i) {
    const auto j = lay.modes(static_cast<std::size_t>(i));
    for (int a = 0; a < d; ++a) {
      if (std::abs(j[a]) > cut) {
        c[i] = 0.0;
        return;
      }
    }
  });
}

Field synthesize_radial_profile(const GridSpec& g, const std::function<double(double)>& m) {
  g.validate();
  Spectrum s(g);
  const SpectrumLayout lay(g);
  const double norm = 1.0 / g.volume();
  auto* c = s.c.data();
  par::for_each(static_cast<std::ptrdiff_t>(s.size()), [&](std::ptrdiff_t i) {
    const auto j = lay.modes(static_cast<std::size_t>(i));
    double k2 = 0.0;
    int parity = 0;
    for (int a = 0; a < g.d; ++a) {
      const double k = g.wavenumber(j[a]);
      k2 += k * k;
      parity += j[a];
    }
    // exp(-i k . (-L, ..)) = (-1)^(j1+..+jd) recenters the profile on x = 0.
    const double sign = (parity & 1) ? -1.0 : 1.0;
    c[i] = norm * sign * m(std::sqrt(k2));
  });
  return Fft::plan_for(g).inverse(s);
}

Field spectral_convolve(const Field& f, const Field& g) {
  if (!(f.grid == g.grid)) throw ConfigError("convolve: grids differ");
  const Fft& fft = Fft::plan_for(f.grid);
  Spectrum a = fft.forward(f);
  Spectrum b = fft.forward(g);
  const SpectrumLayout lay(f.grid);
  const double vol = f.grid.volume();
  const int d = f.grid.d;
  auto* ca = a.c.data();
  const auto* cb = b.c.data();
  par::for_each(static_cast<std::ptrdiff_t>(a.size()), [&](std::ptrdiff_t i) {
    const auto j = lay.modes(static_cast<std::size_t>(i));
    int parity = 0;
    for (int ax = 0; ax < d; ++ax) parity += j[ax];
    const double sign = (parity & 1) ? -1.0 : 1.0;
    ca[i] *= vol * sign * cb[i];
  });
  return fft.inverse(a);
}

Field fractional_laplacian(const Field& f, double theta) {
  require_theta(theta);
  require_finite(f, "fractional_laplacian");
  const Fft& fft = Fft::plan_for(f.grid);
  Spectrum s = fft.forward(f);
  apply_real_multiplier(s, [theta](const std::array<double, 3>& k, const std::array<int, 3>&) {
    const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    return k2 == 0.0 ? 0.0 : std::pow(k2, 0.5 * theta);
  });
  return fft.inverse(s);
}

Field gradient_axis(const Field& f, int axis) {
  require_finite(f, "gradient");
  if (axis < 0 || axis >= f.grid.d) throw ConfigError("gradient: axis out of range");
  const Fft& fft = Fft::plan_for(f.grid);
  Spectrum s = fft.forward(f);
  Spectrum ds(f.grid);
  axis_derivative(s, ds, axis);
  return fft.inverse(ds);
}

std::vector<Field> gradient(const Field& f) {
  std::vector<Field> out;
  out.reserve(f.grid.d);
  for (int a = 0; a < f.grid.d; ++a) out.push_back(gradient_axis(f, a));
  return out;
}

Field poisson_solve(const Field& rho) {
  require_finite(rho, "poisson_solve");
  const Fft& fft = Fft::plan_for(rho.grid);
  Spectrum s = fft.forward(rho);
  apply_real_multiplier(s, [](const std::array<double, 3>& k, const std::array<int, 3>&) {
    const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    return k2 == 0.0 ? 0.0 : 1.0 / k2;
  });
  return fft.inverse(s);
}

Field half_laplacian_inverse(const Field& rho) {
  if (rho.grid.d != 2) throw ConfigError("half_laplacian_inverse: requires d = 2");
  require_finite(rho, "half_laplacian_inverse");
  const Fft& fft = Fft::plan_for(rho.grid);
  Spectrum s = fft.forward(rho);
  apply_real_multiplier(s, [](const std::array<double, 3>& k, const std::array<int, 3>&) {
    const double kn = std::hypot(k[0], k[1]);
    return kn == 0.0 ? 0.0 : -1.0 / kn;
  });
  return fft.inverse(s);
}

std::array<Field, 2> perp_gradient(const Field& f) {
  if (f.grid.d != 2) throw ConfigError("perp_gradient: requires d = 2");
  require_finite(f, "perp_gradient");
  const Fft& fft = Fft::plan_for(f.grid);
  Spectrum s = fft.forward(f);
  Spectrum d1(f.grid), d2(f.grid);
  axis_derivative(s, d1, 0);
  axis_derivative(s, d2, 1);
  Field m2 = fft.inverse(d2);
  par::scale(m2.v, -1.0);
  return {std::move(m2), fft.inverse(d1)};
}

Field dealiased_product(const Field& f, const Field& g) {
  if (!(f.grid == g.grid)) throw ConfigError("dealiased_product: grids differ");
  require_finite(f, "dealiased_product");
  require_finite(g, "dealiased_product");
  const Fft& fft = Fft::plan_for(f.grid);
  Spectrum a = fft.forward(f);
  Spectrum b = fft.forward(g);
  truncate_two_thirds(a);
  truncate_two_thirds(b);
  Field fa = fft.inverse(a);
  Field fb = fft.inverse(b);
  Field prod(f.grid);
  par::multiply(fa.v, fb.v, prod.v);
  Spectrum p = fft.forward(prod);
  truncate_two_thirds(p);
  return fft.inverse(p);
}

}  // namespace fracsim
