#include "fracsim/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "fracsim/errors.hpp"
#include "fracsim/fft.hpp"
#include "fracsim/io.hpp"
#include "fracsim/kernels.hpp"
#include "fracsim/spectral.hpp"

namespace fracsim {

double lp_norm(const Field& f, double p) {
  if (!(p >= 1.0)) throw ConfigError("lp_norm: p must be >= 1");
  if (std::isinf(p)) return par::max_abs(f.v);
  const double s = par::sum_abs_pow(f.v, p) * f.grid.cell_volume();
  return std::pow(s, 1.0 / p);
}

double distance_to_self_similar(const Field& rho, double mass, double theta, double t) {
  KernelSample g = heat_kernel(theta, t, rho.grid);
  Field diff = rho;
  par::add_scaled(diff.v, -mass, g.values.v);
  return par::sum_abs(diff.v) * rho.grid.cell_volume();
}

namespace {

struct EntropyTerms {
  double vp = 0.0;   // sum w v^p
  double v1 = 0.0;   // sum w v
  double l1 = 0.0;   // sum w |v - 1|
};

EntropyTerms entropy_terms(const Field& rho, double mass, double theta, double s, double p) {
  if (!(p > 1.0 && p < 2.0)) throw ConfigError("entropy: p must lie in (1, 2)");
  if (!(s >= 0.0)) throw ConfigError("entropy: s must be nonnegative");
  if (!(mass > 0.0)) throw ConfigError("entropy: mass must be positive");
  KernelSample ks = heat_kernel(theta, s + 1.0 / theta, rho.grid);
  if (!(par::min(ks.values.v) > 0.0))
    throw NumericalAbort(0, "entropy: reference kernel not strictly positive on this grid");
  const double w0 = rho.grid.cell_volume();
  const std::size_t n = rho.size();
  const double* pr = rho.data();
  const double* pg = ks.values.data();
  // Deterministic blocked accumulation, same discipline as par::sum.
  EntropyTerms acc;
  constexpr std::size_t kBlock = 8192;
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<EntropyTerms> partial(nblocks);
  par::for_each(static_cast<std::ptrdiff_t>(nblocks), [&](std::ptrdiff_t b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(lo + kBlock, n);
    EntropyTerms e;
    for (std::size_t i = lo; i < hi; ++i) {
      const double w = w0 * pg[i];
      // Small negative ringing is clamped; the quadrature weight is the
      // strictly positive kernel.
      const double v = std::max(pr[i], 0.0) / (mass * pg[i]);
      e.vp += w * std::pow(v, p);
      e.v1 += w * v;
      e.l1 += w * std::abs(v - 1.0);
    }
    partial[b] = e;
  });
  for (const auto& e : partial) {
    acc.vp += e.vp;
    acc.v1 += e.v1;
    acc.l1 += e.l1;
  }
  return acc;
}

}  // namespace

double entropy_Ep(const Field& rho, double mass, double theta, double s, double p) {
  const EntropyTerms e = entropy_terms(rho, mass, theta, s, p);
  return e.vp - std::pow(e.v1, p);
}

double csiszar_kullback_check(const Field& rho, double mass, double theta, double s, double p) {
  const EntropyTerms e = entropy_terms(rho, mass, theta, s, p);
  const double ep = e.vp - std::pow(e.v1, p);
  return 2.0 / (p * (p - 1.0)) * ep - e.l1 * e.l1;
}

double weighted_moment_norm(const Field& rho, double q) {
  if (!(q >= 1.0)) throw ConfigError("weighted_moment_norm: q must be >= 1");
  const GridSpec& g = rho.grid;
  const double* pr = rho.data();
  const std::size_t n = rho.size();
  constexpr std::size_t kBlock = 8192;
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks, 0.0);
  par::for_each(static_cast<std::ptrdiff_t>(nblocks), [&](std::ptrdiff_t b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(lo + kBlock, n);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const auto x = g.coords(i);
      double r2 = 0.0;
      for (int a = 0; a < g.d; ++a) r2 += x[a] * x[a];
      const double w = std::pow(r2, 0.5 * g.d);  // |x|^d
      s += std::pow(w * std::abs(pr[i]), q);
    }
    partial[b] = s;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return std::pow(total * g.cell_volume(), 1.0 / q);
}

double grad_psi_sup(const Field& rho) {
  Field psi = poisson_solve(rho);
  std::vector<Field> dpsi = gradient(psi);
  const std::size_t n = rho.size();
  constexpr std::size_t kBlock = 8192;
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks, 0.0);
  par::for_each(static_cast<std::ptrdiff_t>(nblocks), [&](std::ptrdiff_t b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(lo + kBlock, n);
    double m = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      double g2 = 0.0;
      for (int a = 0; a < rho.grid.d; ++a) g2 += dpsi[a].v[i] * dpsi[a].v[i];
      m = std::max(m, g2);
    }
    partial[b] = m;
  });
  double m = 0.0;
  for (double p : partial) m = std::max(m, p);
  return std::sqrt(m);
}

double bregman_distance(double a, double b, double p) {
  if (!(a >= 0.0 && b >= 0.0)) throw ConfigError("bregman_distance: arguments must be >= 0");
  if (!(p > 1.0 && p <= 2.0)) throw ConfigError("bregman_distance: p must lie in (1, 2]");
  return std::pow(a, p) + (p - 1.0) * std::pow(b, p) - p * std::pow(b, p - 1.0) * a;
}

RateFit fit_decay_rate(std::span<const double> times, std::span<const double> values,
                       double t_lo, double t_hi, double shift) {
  if (times.size() != values.size()) throw ConfigError("fit_decay_rate: size mismatch");
  if (!(t_hi > t_lo)) throw ConfigError("fit_decay_rate: empty window");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t_lo || times[i] > t_hi) continue;
    if (!(values[i] > 0.0))
      throw ConfigError("fit_decay_rate: values must be positive inside the window");
    xs.push_back(std::log(times[i] + shift));
    ys.push_back(std::log(values[i]));
  }
  if (xs.size() < 5) throw ConfigError("fit_decay_rate: fewer than 5 samples in window");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  RateFit fit;
  fit.t_lo = t_lo;
  fit.t_hi = t_hi;
  fit.samples = static_cast<int>(xs.size());
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    rss += r * r;
  }
  fit.rms_residual = std::sqrt(rss / n);
  return fit;
}

SignProbeResult entropy_production_sign_probe(const Field& rho, const DriftMatrix& D, double q) {
  if (D.d != rho.grid.d) throw ConfigError("sign probe: matrix dimension does not match grid");
  if (!(q > 1.0)) throw ConfigError("sign probe: q must be > 1");
  const double prefac = (q - 1.0) / q;
  const double a = D.trace() / D.d;
  const double w0 = rho.grid.cell_volume();

  SignProbeResult res;
  res.trace_term = -prefac * a * par::sum_abs_pow(rho.v, q + 1.0) * w0;

  // Traceless symmetric part drives the fluctuation multiplier
  // -(k . Dt k) / |k|^2 acting on rho.
  DriftMatrix dt(D.d, std::vector<double>(static_cast<std::size_t>(D.d) * D.d, 0.0));
  for (int i = 0; i < D.d; ++i)
    for (int j = 0; j < D.d; ++j) dt(i, j) = 0.5 * (D(i, j) + D(j, i)) - (i == j ? a : 0.0);

  const Fft& fft = Fft::plan_for(rho.grid);
  Spectrum s = fft.forward(rho);
  apply_real_multiplier(s, [&](const std::array<double, 3>& k, const std::array<int, 3>&) {
    double k2 = 0.0, quad = 0.0;
    for (int i = 0; i < D.d; ++i) {
      k2 += k[i] * k[i];
      for (int j = 0; j < D.d; ++j) quad += k[i] * dt(i, j) * k[j];
    }
    return k2 == 0.0 ? 0.0 : -quad / k2;
  });
  Field w = fft.inverse(s);

  const std::size_t n = rho.size();
  const double* pr = rho.data();
  const double* pw = w.data();
  constexpr std::size_t kBlock = 8192;
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks, 0.0);
  par::for_each(static_cast<std::ptrdiff_t>(nblocks), [&](std::ptrdiff_t b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(lo + kBlock, n);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i)
      acc += std::pow(std::abs(pr[i]), q) * pw[i];
    partial[b] = acc;
  });
  double fluct = 0.0;
  for (double p : partial) fluct += p;
  res.fluctuation_term = prefac * fluct * w0;
  return res;
}

void DiagnosticsConfig::validate() const {
  for (double p : lp)
    if (!(p >= 1.0)) throw ConfigError("diagnostics.lp: entries must be >= 1");
  if (!(entropy_p > 1.0 && entropy_p < 2.0))
    throw ConfigError("diagnostics.entropy_p: must lie in (1, 2)");
  if (moment_q != 0.0 && !(moment_q >= 1.0))
    throw ConfigError("diagnostics.moment_q: must be >= 1");
  if (fit_hi != 0.0 && !(fit_hi > fit_lo))
    throw ConfigError("diagnostics.fit_window: upper bound must exceed lower bound");
  if (ratio_hi != 0.0 && !(ratio_hi > ratio_lo))
    throw ConfigError("diagnostics.ratio_window: upper bound must exceed lower bound");
}

DiagnosticsRecord compute_record(const Field& rho, double t, double mass, double theta,
                                 const DiagnosticsConfig& cfg) {
  DiagnosticsRecord rec;
  rec.t = t;
  rec.mass = par::sum(rho.v) * rho.grid.cell_volume();
  for (double p : cfg.lp) rec.lp_norms[p] = lp_norm(rho, p);
  for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()})
    if (!rec.lp_norms.count(p)) rec.lp_norms[p] = lp_norm(rho, p);
  rec.min_value = par::min(rho.v);

  const double q = cfg.moment_q > 0.0 ? cfg.moment_q : 2.0 * rho.grid.d / theta;
  if (t > 0.0) {
    rec.dist_selfsim = distance_to_self_similar(rho, mass, theta, t);
    rec.dist_ratio = rec.dist_selfsim * std::sqrt(1.0 + theta * t);
  } else {
    rec.dist_selfsim = std::numeric_limits<double>::quiet_NaN();
    rec.dist_ratio = std::numeric_limits<double>::quiet_NaN();
  }
  rec.entropy_p = entropy_Ep(rho, mass, theta, t, cfg.entropy_p);
  rec.ck_residual = csiszar_kullback_check(rho, mass, theta, t, cfg.entropy_p);
  rec.grad_psi_sup = grad_psi_sup(rho);
  rec.grad_psi_ratio =
      rec.grad_psi_sup * std::pow(1.0 + t, (rho.grid.d - 1.0) / theta);
  rec.moment_q = weighted_moment_norm(rho, q);
  rec.moment_ratio = rec.moment_q * std::pow(1.0 + t, -rho.grid.d / (theta * q));
  return rec;
}

void write_diagnostics_csv(std::ostream& os, std::span<const DiagnosticsRecord> records) {
  os << "t,mass,l1,l2,linf,dist_selfsim,dist_ratio,entropy_p,ck_residual,"
        "grad_psi_sup,grad_psi_ratio,moment_q,moment_ratio\n";
  const double inf = std::numeric_limits<double>::infinity();
  for (const auto& r : records) {
    os << format_double(r.t) << ',' << format_double(r.mass) << ','
       << format_double(r.lp_norms.at(1.0)) << ',' << format_double(r.lp_norms.at(2.0)) << ','
       << format_double(r.lp_norms.at(inf)) << ',' << format_double(r.dist_selfsim) << ','
       << format_double(r.dist_ratio) << ',' << format_double(r.entropy_p) << ','
       << format_double(r.ck_residual) << ',' << format_double(r.grad_psi_sup) << ','
       << format_double(r.grad_psi_ratio) << ',' << format_double(r.moment_q) << ','
       << format_double(r.moment_ratio) << '\n';
  }
}

}  // namespace fracsim
