#pragma once

#include <functional>

namespace fracsim {

// Adaptive Simpson rule on [a, b] with absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 40);

// Normalization constant of the 1-d singular-integral form of (-Lap)^(theta/2),
// matching the |k|^theta Fourier multiplier:
//   c(theta) = theta * 2^(theta-1) * Gamma((1+theta)/2) / (sqrt(pi) * Gamma(1-theta/2)).
double frac_laplacian_constant_1d(double theta);

// Direct evaluation of (-Lap)^(theta/2) f at a point for 0 < theta < 1:
//   -c(theta) * int (f(x+y) - f(x)) / |y|^(1+theta) dy,
// folded to the symmetric second difference on (0, cutoff] with the analytic
// far-tail term -2 f(x) cutoff^(-theta)/theta. The caller picks a cutoff
// beyond which f is negligible or oscillatory-cancelling.
double fractional_laplacian_direct_1d(const std::function<double(double)>& f, double theta,
                                      double x, double cutoff = 60.0, double tol = 1e-10);

}  // namespace fracsim
