#include "anglerank/specialfn.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace anglerank {

namespace {

void check_order_arg(double nu, double x, const char* who) {
  if (!(nu >= 0.0))
    throw std::domain_error(std::string(who) + ": order must be >= 0");
  if (!(x >= 0.0))
    throw std::domain_error(std::string(who) + ": argument must be >= 0");
}

// Ascending series I_nu(x) = (x/2)^nu / Gamma(nu+1) * sum_k t_k with
// t_0 = 1, t_k = t_{k-1} * (x/2)^2 / (k (nu+k)).  All terms positive, so
// the sum is cancellation-free; it is rescaled on the fly since it can
// exceed the double range for large nu with x near 2 nu.
double log_series(double nu, double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0, log_scale = 0.0;
  for (int k = 1; k < 100000; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (term < sum * 1e-18) break;
    if (sum > 1e280) {
      sum *= 1e-280;
      term *= 1e-280;
      log_scale += 280.0 * std::log(10.0);
    }
  }
  return nu * std::log(0.5 * x) - std::lgamma(nu + 1.0) + std::log(sum) + log_scale;
}

// Hankel expansion I_nu(x) ~ e^x / sqrt(2 pi x) * sum_k (-1)^k a_k(nu)/x^k,
// a_k(nu) = prod_{j<=k} (4nu^2 - (2j-1)^2) / (k! 8^k).  Used only for
// nu < 1 and x >= 30, where the truncation error is below 1e-12 relative
// (the neglected reflected series is O(e^{-2x})).
double log_asymptotic_base(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0, sum = 1.0, prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (odd * odd - mu) / (8.0 * k * x);
    if (std::abs(term) >= prev) break;  // past optimal truncation
    sum += term;
    prev = std::abs(term);
    if (prev < 1e-18) break;
  }
  return x - 0.5 * std::log(2.0 * M_PI * x) + std::log(sum);
}

// Backward recurrence for r_v = I_{v+1}(x)/I_v(x): r_v = 1/(2(v+1)/x + r_{v+1}),
// started at r_{v+K} = 0 with K past the turning point, doubled until stable.
double ratio_backward(double nu, double x) {
  int K = 60 + static_cast<int>(1.5 * std::max(x, nu));
  double prev = -1.0;
  for (;;) {
    double r = 0.0;
    for (int k = K; k >= 1; --k) r = 1.0 / (2.0 * (nu + k) / x + r);
    if (std::abs(r - prev) <= 1e-16 * r || K > (1 << 26)) return r;
    prev = r;
    K *= 2;
  }
}

}  // namespace

double log_bessel_i(double nu, double x) {
  check_order_arg(nu, x, "log_bessel_i");
  if (x == 0.0) return nu == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (x <= std::max(30.0, 2.0 * nu)) return log_series(nu, x);
  // Large argument: evaluate at the fractional base order, then raise the
  // order with exact continued-fraction ratios.
  const double base = nu - std::floor(nu);
  double lv = log_asymptotic_base(base, x);
  for (double v = base; v < nu - 0.5; v += 1.0) lv += std::log(ratio_backward(v, x));
  return lv;
}

double bessel_ratio(double nu, double x) {
  check_order_arg(nu, x, "bessel_ratio");
  if (x == 0.0) return 0.0;
  return ratio_backward(nu, x);
}

double dlog_bessel_i(double nu, double x) {
  check_order_arg(nu, x, "dlog_bessel_i");
  if (x == 0.0) {
    if (nu > 0.0) throw std::domain_error("dlog_bessel_i: x = 0 with nu > 0");
    return 0.0;  // I_0'(0)/I_0(0)
  }
  return ratio_backward(nu, x) + nu / x;
}

double d_ratio_log_bessel(double nu, double x) {
  check_order_arg(nu, x, "d_ratio_log_bessel");
  if (x <= 0.0) throw std::domain_error("d_ratio_log_bessel: requires x > 0");
  const double r = ratio_backward(nu, x);
  return -nu / (x * x) + 1.0 - (2.0 * nu + 1.0) / x * r - r * r;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
  return std::lgamma(x);
}

double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: requires x > 0");
  // Recurrence up to x >= 8, then the Bernoulli asymptotic series.
  double result = 0.0;
  while (x < 8.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x, inv2 = inv * inv;
  // B_2/2, B_4/4, ... B_14/14
  const double c[7] = {1.0 / 12.0,  -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0,
                       1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};
  double tail = 0.0, p = inv2;
  for (double coef : c) {
    tail += coef * p;
    p *= inv2;
  }
  return result + std::log(x) - 0.5 * inv - tail;
}

}  // namespace anglerank
