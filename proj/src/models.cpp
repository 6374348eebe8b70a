#include "fracsim/models.hpp"

#include <cmath>

#include "fracsim/errors.hpp"
#include "fracsim/kernels.hpp"
#include "fracsim/spectral.hpp"

namespace fracsim {

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::drift_diffusion_poisson: return "drift_diffusion_poisson";
    case ModelKind::quasi_geostrophic: return "quasi_geostrophic";
    case ModelKind::fractional_burgers: return "fractional_burgers";
    case ModelKind::general_drift: return "general_drift";
  }
  return "?";
}

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "drift_diffusion_poisson" || s == "ddp") return ModelKind::drift_diffusion_poisson;
  if (s == "quasi_geostrophic" || s == "qg") return ModelKind::quasi_geostrophic;
  if (s == "fractional_burgers" || s == "burgers") return ModelKind::fractional_burgers;
  if (s == "general_drift") return ModelKind::general_drift;
  throw ConfigError("model.kind: unknown model '" + s + "'");
}

void ModelSpec::validate() const {
  FracParams{theta, d}.validate();
  if (kind == ModelKind::quasi_geostrophic && d != 2)
    throw ConfigError("model: quasi_geostrophic requires d = 2");
  if (kind == ModelKind::fractional_burgers && d != 1)
    throw ConfigError("model: fractional_burgers requires d = 1");
  if (kind == ModelKind::general_drift) {
    if (!(kappa > 0.0)) throw ConfigError("model.kappa: must be positive");
    if (drift_matrix.d != d)
      throw ConfigError("model.drift_matrix: dimension does not match d");
  }
}

namespace {

void ensure_workspace(DriftWorkspace& ws, const GridSpec& g) {
  if (!(ws.scratch_a.grid == g)) {
    ws.scratch_a = Spectrum(g);
    ws.scratch_b = Spectrum(g);
    ws.field_a = Field(g);
    ws.field_b = Field(g);
    ws.field_c = Field(g);
    ws.field_d = Field(g);
  }
}

void maybe_truncate(Spectrum& s, bool dealias) {
  if (dealias) truncate_two_thirds(s);
}

// Potential multiplier per model: psi_hat = mult(k) * rho_hat.
double potential_multiplier(ModelKind kind, double k2) {
  if (k2 == 0.0) return 0.0;
  if (kind == ModelKind::quasi_geostrophic) return -1.0 / std::sqrt(k2);
  return 1.0 / k2;
}

}  // namespace

double assemble_drift(const Spectrum& rho_hat, const ModelSpec& model, Spectrum& out,
                      DriftWorkspace& ws) {
  const GridSpec g = rho_hat.grid;
  out.grid = g;
  out.c.assign(rho_hat.c.size(), 0.0);
  if (!model.drift_enabled) return 0.0;
  ensure_workspace(ws, g);
  const Fft& fft = Fft::plan_for(g);
  const SpectrumLayout lay(g);

  if (model.kind == ModelKind::fractional_burgers) {
    // -dealiased(rho * d_x rho)
    ws.scratch_a.grid = g;
    ws.scratch_a.c = rho_hat.c;
    maybe_truncate(ws.scratch_a, model.dealias);
    fft.inverse(ws.scratch_a, ws.field_a);  // truncated rho
    axis_derivative(rho_hat, ws.scratch_b, 0);
    maybe_truncate(ws.scratch_b, model.dealias);
    fft.inverse(ws.scratch_b, ws.field_b);  // truncated d_x rho
    const double sup = par::max_abs(ws.field_a.v);
    par::multiply(ws.field_a.v, ws.field_b.v, ws.field_c.v);
    fft.forward(ws.field_c, out);
    maybe_truncate(out, model.dealias);
    par::for_each(static_cast<std::ptrdiff_t>(out.size()),
                  [&](std::ptrdiff_t i) { out.c[i] = -out.c[i]; });
    return sup;
  }

  // Poisson-type drifts: div(rho * V grad psi) with V = I, perp, or D.
  ws.scratch_a.grid = g;
  ws.scratch_a.c = rho_hat.c;
  maybe_truncate(ws.scratch_a, model.dealias);
  fft.inverse(ws.scratch_a, ws.field_a);  // truncated rho

  // psi_hat from rho_hat
  Spectrum psi = rho_hat;
  auto* pc = psi.c.data();
  par::for_each(static_cast<std::ptrdiff_t>(psi.size()), [&](std::ptrdiff_t i) {
    const auto j = lay.modes(static_cast<std::size_t>(i));
    double k2 = 0.0;
    for (int a = 0; a < g.d; ++a) {
      const double k = g.wavenumber(j[a]);
      k2 += k * k;
    }
    pc[i] *= potential_multiplier(model.kind, k2);
  });

  double sup2 = 0.0;
  Field* vel[3] = {&ws.field_b, &ws.field_c, &ws.field_d};
  const bool qg = model.kind == ModelKind::quasi_geostrophic;
  for (int a = 0; a < g.d; ++a) {
    // Velocity component a: grad psi, perp-grad psi, or (D grad psi)_a.
    if (model.kind == ModelKind::general_drift) {
      ws.scratch_b.grid = g;
      ws.scratch_b.c.assign(psi.c.size(), 0.0);
      for (int b = 0; b < g.d; ++b) {
        const double w = model.drift_matrix(a, b);
        if (w == 0.0) continue;
        Spectrum der(g);
        axis_derivative(psi, der, b);
        par::for_each(static_cast<std::ptrdiff_t>(der.size()),
                      [&](std::ptrdiff_t i) { ws.scratch_b.c[i] += w * der.c[i]; });
      }
    } else if (qg) {
      // perp grad = (-d2, d1)
      axis_derivative(psi, ws.scratch_b, a == 0 ? 1 : 0);
      if (a == 0)
        par::for_each(static_cast<std::ptrdiff_t>(ws.scratch_b.size()),
                      [&](std::ptrdiff_t i) { ws.scratch_b.c[i] = -ws.scratch_b.c[i]; });
    } else {
      axis_derivative(psi, ws.scratch_b, a);
    }
    maybe_truncate(ws.scratch_b, model.dealias);
    fft.inverse(ws.scratch_b, *vel[a]);
  }
  {
    const std::size_t n = g.size();
    constexpr std::size_t kBlock = 8192;
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(nblocks, 0.0);
    par::for_each(static_cast<std::ptrdiff_t>(nblocks), [&](std::ptrdiff_t b) {
      const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
      const std::size_t hi = std::min(lo + kBlock, n);
      double m = 0.0;
      for (std::size_t i = lo; i < hi; ++i) {
        double v2 = 0.0;
        for (int a = 0; a < g.d; ++a) v2 += vel[a]->v[i] * vel[a]->v[i];
        m = std::max(m, v2);
      }
      partial[b] = m;
    });
    for (double p : partial) sup2 = std::max(sup2, p);
  }

  Field prod(g);
  Spectrum flux(g);
  for (int a = 0; a < g.d; ++a) {
    par::multiply(ws.field_a.v, vel[a]->v, prod.v);
    fft.forward(prod, flux);
    maybe_truncate(flux, model.dealias);
    Spectrum dflux(g);
    axis_derivative(flux, dflux, a);
    par::for_each(static_cast<std::ptrdiff_t>(out.size()),
                  [&](std::ptrdiff_t i) { out.c[i] += dflux.c[i]; });
  }
  return std::sqrt(sup2);
}

namespace {

Field field_rhs(const Field& rho, const ModelSpec& model) {
  model.validate();
  if (rho.grid.d != model.d) throw ConfigError("rhs: field dimension does not match model");
  require_finite(rho, "rhs");
  const Fft& fft = Fft::plan_for(rho.grid);
  Spectrum rho_hat = fft.forward(rho);
  Spectrum drift(rho.grid);
  DriftWorkspace ws;
  assemble_drift(rho_hat, model, drift, ws);
  // out = -kappa |k|^theta rho_hat + drift
  const SpectrumLayout lay(rho.grid);
  const GridSpec g = rho.grid;
  const double kappa = model.dissipation();
  const double theta = model.theta;
  par::for_each(static_cast<std::ptrdiff_t>(rho_hat.size()), [&](std::ptrdiff_t i) {
    const auto j = lay.modes(static_cast<std::size_t>(i));
    double k2 = 0.0;
    for (int a = 0; a < g.d; ++a) {
      const double k = g.wavenumber(j[a]);
      k2 += k * k;
    }
    const double diss = k2 == 0.0 ? 0.0 : kappa * std::pow(k2, 0.5 * theta);
    drift.c[i] -= diss * rho_hat.c[i];
  });
  return fft.inverse(drift);
}

}  // namespace

Field rhs_drift_diffusion_poisson(const Field& rho, double theta) {
  ModelSpec m;
  m.kind = ModelKind::drift_diffusion_poisson;
  m.theta = theta;
  m.d = rho.grid.d;
  return field_rhs(rho, m);
}

Field rhs_quasi_geostrophic(const Field& rho, double theta) {
  ModelSpec m;
  m.kind = ModelKind::quasi_geostrophic;
  m.theta = theta;
  m.d = 2;
  return field_rhs(rho, m);
}

Field rhs_burgers(const Field& rho, double theta) {
  ModelSpec m;
  m.kind = ModelKind::fractional_burgers;
  m.theta = theta;
  m.d = 1;
  return field_rhs(rho, m);
}

Field rhs_general_drift(const Field& rho, double theta, double kappa, const DriftMatrix& D) {
  ModelSpec m;
  m.kind = ModelKind::general_drift;
  m.theta = theta;
  m.d = rho.grid.d;
  m.kappa = kappa;
  m.drift_matrix = D;
  return field_rhs(rho, m);
}

Field model_rhs(const Field& rho, const ModelSpec& model) { return field_rhs(rho, model); }

double RescaleMap::s_of_t(double t) const { return std::expm1(theta * t) / theta; }
double RescaleMap::t_of_s(double s) const { return std::log1p(theta * s) / theta; }

std::pair<Field, GridSpec> confined_from_original(const Field& rho_s, double s, double mass,
                                                  double theta) {
  require_theta(theta);
  if (!(s >= 0.0)) throw ConfigError("confined_from_original: s must be >= 0");
  if (!(mass > 0.0)) throw ConfigError("confined_from_original: mass must be positive");
  const int d = rho_s.grid.d;
  const double et = std::pow(1.0 + theta * s, 1.0 / theta);  // e^t
  GridSpec confined = rho_s.grid;
  confined.box = rho_s.grid.box / et;
  // Confined sample y_i = x_i / e^t, so u(y_i) = (e^(dt)/M) rho(x_i).
  Field u(confined, rho_s.v);
  par::scale(u.v, std::pow(et, d) / mass);
  return {std::move(u), confined};
}

double EquivalenceResult::relative_gap() const {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

EquivalenceResult distance_equivalence_check(const Field& rho_s, double s, double mass,
                                             double theta) {
  EquivalenceResult res;
  {
    KernelSample g = heat_kernel(theta, s + 1.0 / theta, rho_s.grid);
    Field diff = rho_s;
    par::add_scaled(diff.v, -mass, g.values.v);
    res.lhs = par::sum_abs(diff.v) * rho_s.grid.cell_volume();
  }
  {
    auto [u, confined] = confined_from_original(rho_s, s, mass, theta);
    KernelSample g = heat_kernel(theta, 1.0 / theta, confined);
    par::add_scaled(u.v, -1.0, g.values.v);
    res.rhs = mass * par::sum_abs(u.v) * confined.cell_volume();
  }
  return res;
}

}  // namespace fracsim
