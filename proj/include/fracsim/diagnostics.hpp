#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "fracsim/driftmatrix.hpp"
#include "fracsim/grid.hpp"

namespace fracsim {

// L^p norm by rectangle-rule quadrature; p = infinity() returns max |f|.
double lp_norm(const Field& f, double p);

// ||rho - M G_theta(t)||_L1 on the field's own grid.
double distance_to_self_similar(const Field& rho, double mass, double theta, double t);

// Relative entropy against the self-similar profile, evaluated in the
// original frame:
//   E_p = sum w v^p - (sum w v)^p,  w = h^d G(s + 1/theta),  v = rho / (M G).
// Nonnegative by the discrete Jensen inequality since the weights sum to 1.
double entropy_Ep(const Field& rho, double mass, double theta, double s, double p);

// (2 / (p(p-1))) E_p - (sum w |v - 1|)^2; must stay >= -1e-6.
double csiszar_kullback_check(const Field& rho, double mass, double theta, double s, double p);

// || |x|^d rho ||_Lq by weighted rectangle rule.
double weighted_moment_norm(const Field& rho, double q);

// sup over the grid of |grad psi| with psi = poisson_solve(rho).
double grad_psi_sup(const Field& rho);

// Bregman distance a^p + (p-1) b^p - p b^(p-1) a for Phi(s) = s^p.
double bregman_distance(double a, double b, double p);

// Least squares of ln(value) against ln(time + shift) over the window.
struct RateFit {
  double t_lo = 0.0, t_hi = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  int samples = 0;
};
RateFit fit_decay_rate(std::span<const double> times, std::span<const double> values,
                       double t_lo, double t_hi, double shift = 0.0);

// Splits (q-1)/q * int rho^q div(D grad psi) dx into the isotropic trace part
// and the traceless-symmetric fluctuation part (a Riesz-multiplier term that
// vanishes identically for admissible D).
struct SignProbeResult {
  double trace_term = 0.0;
  double fluctuation_term = 0.0;
};
SignProbeResult entropy_production_sign_probe(const Field& rho, const DriftMatrix& D, double q);

// One output row of a run. Ratio columns compensate the expected rates:
// dist * (1 + theta t)^(1/2), grad * (1 + t)^((d-1)/theta),
// moment * (1 + t)^(-d/(theta q)).
struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  std::map<double, double> lp_norms;  // keys include 1, 2 and infinity
  double dist_selfsim = 0.0;
  double dist_ratio = 0.0;
  double entropy_p = 0.0;
  double ck_residual = 0.0;
  double grad_psi_sup = 0.0;
  double grad_psi_ratio = 0.0;
  double moment_q = 0.0;
  double moment_ratio = 0.0;
  double min_value = 0.0;
};

struct DiagnosticsConfig {
  std::vector<double> lp = {1.0, 2.0, std::numeric_limits<double>::infinity()};
  double entropy_p = 1.5;
  double moment_q = 0.0;  // 0 -> default 2d/theta
  double fit_lo = 0.0, fit_hi = 0.0;
  double ratio_lo = 0.0, ratio_hi = 0.0;
  void validate() const;
};

DiagnosticsRecord compute_record(const Field& rho, double t, double mass, double theta,
                                 const DiagnosticsConfig& cfg);

// Header: t,mass,l1,l2,linf,dist_selfsim,dist_ratio,entropy_p,ck_residual,
//         grad_psi_sup,grad_psi_ratio,moment_q,moment_ratio
void write_diagnostics_csv(std::ostream& os, std::span<const DiagnosticsRecord> records);

}  // namespace fracsim
