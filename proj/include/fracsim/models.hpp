#pragma once

#include <string>
#include <utility>

#include "fracsim/driftmatrix.hpp"
#include "fracsim/fft.hpp"
#include "fracsim/grid.hpp"

namespace fracsim {

enum class ModelKind {
  drift_diffusion_poisson,  // d rho/dt = -(-Lap)^(th/2) rho + div(rho grad psi), -Lap psi = rho
  quasi_geostrophic,        // drift div(rho perp-grad psi), (-Lap)^(1/2) psi = -rho, d = 2
  fractional_burgers,       // -(-Lap)^(th/2) rho - rho d_x rho, d = 1
  general_drift,            // -kappa (-Lap)^(th/2) rho + div(rho D grad psi)
};

std::string to_string(ModelKind k);
ModelKind model_kind_from_string(const std::string& s);

struct ModelSpec {
  ModelKind kind = ModelKind::drift_diffusion_poisson;
  double theta = 1.0;
  int d = 2;
  double kappa = 1.0;           // dissipation factor (general_drift)
  DriftMatrix drift_matrix;     // general_drift only
  bool drift_enabled = true;    // false -> pure fractional heat flow
  bool dealias = true;

  double dissipation() const { return kind == ModelKind::general_drift ? kappa : 1.0; }
  void validate() const;
};

// Right-hand sides as pure field operations. Inputs must be finite; small
// negative ringing in rho is tolerated.
Field rhs_drift_diffusion_poisson(const Field& rho, double theta);
Field rhs_quasi_geostrophic(const Field& rho, double theta);
Field rhs_burgers(const Field& rho, double theta);
Field rhs_general_drift(const Field& rho, double theta, double kappa, const DriftMatrix& D);
Field model_rhs(const Field& rho, const ModelSpec& model);

// Spectral-state drift assembly used by the integrator: writes the drift
// divergence (everything except the dissipation term) into `out` and returns
// the advective sup used for the CFL bound (sup |drift velocity|, or sup
// |rho| for the Burgers flux). For drift_enabled == false, out is zero.
struct DriftWorkspace {
  Spectrum scratch_a, scratch_b;
  Field field_a, field_b, field_c, field_d;
};
double assemble_drift(const Spectrum& rho_hat, const ModelSpec& model, Spectrum& out,
                      DriftWorkspace& ws);

// Map between original time s and confined time t: s = (e^(theta t) - 1)/theta.
struct RescaleMap {
  double theta = 1.0;
  int d = 1;
  double mass = 1.0;
  double s_of_t(double t) const;
  double t_of_s(double s) const;
};

// u(x) = (e^(dt)/M) rho(e^t x) on the confined grid (the original grid shrunk
// by e^-t); samples map one-to-one, so the transform is exact.
std::pair<Field, GridSpec> confined_from_original(const Field& rho_s, double s, double mass,
                                                  double theta);

// Left: ||rho(s) - M G(s + 1/theta)||_1 on the original grid.
// Right: M ||u(t) - G(1/theta)||_1 on the confined grid.
struct EquivalenceResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double relative_gap() const;
};
EquivalenceResult distance_equivalence_check(const Field& rho_s, double s, double mass,
                                             double theta);

}  // namespace fracsim
