#pragma once

// Log-scale modified Bessel functions of the first kind with real
// nonnegative order, their log-derivatives and ratios, and gamma/digamma
// helpers. Everything is exposed in log scale only: in-model arguments
// reach beta*kappa ~ 1e4, far past the overflow point of I_nu itself.

namespace anglerank {

// ln I_nu(x) for nu >= 0, x >= 0.  ln I_0(0) = 0, ln I_nu(0) = -inf for nu > 0.
// Power series for x <= max(30, 2 nu); large-x asymptotic expansion at the
// fractional base order plus a continued-fraction order ladder otherwise.
double log_bessel_i(double nu, double x);

// I_{nu+1}(x) / I_nu(x), in [0, 1).  Strictly increasing in x; 0 at x = 0.
// Backward continued fraction (Gautschi), free of cancellation.
double bessel_ratio(double nu, double x);

// d/dx ln I_nu(x) = I_{nu+1}(x)/I_nu(x) + nu/x, for x > 0 (0 at nu = x = 0).
double dlog_bessel_i(double nu, double x);

// (I'_nu(x)/I_nu(x))' = -nu/x^2 + 1 - (2nu+1)/x * R - R^2, R = I_{nu+1}/I_nu.
double d_ratio_log_bessel(double nu, double x);

// ln Gamma(x), x > 0.
double log_gamma(double x);

// Digamma psi(x), x > 0.
double digamma(double x);

}  // namespace anglerank
