#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "anglerank/specialfn.hpp"

using namespace anglerank;

namespace {

// Independent power-series oracle: terms summed in long double from their
// logarithms, never sharing code with the implementation.
long double series_oracle(double nu, double x) {
  long double sum = 0.0L;
  for (int k = 0; k < 400; ++k) {
    const long double log_term = (2.0L * k + nu) * std::log(static_cast<long double>(x) / 2.0L) -
                                 std::lgamma(static_cast<long double>(k) + 1.0L) -
                                 std::lgamma(static_cast<long double>(k) + nu + 1.0L);
    sum += std::exp(log_term);
  }
  return std::log(sum);
}

}  // namespace

TEST_CASE("log_bessel_i matches the series oracle on the small-argument grid") {
  for (double nu = 0.0; nu <= 48.5; nu += 0.5) {
    for (double x : {1e-3, 0.1, 0.5, 1.0, 3.0, 10.0, 30.0}) {
      const double got = log_bessel_i(nu, x);
      const double want = static_cast<double>(series_oracle(nu, x));
      CHECK(got == doctest::Approx(want).epsilon(1e-10));
    }
  }
}

TEST_CASE("log_bessel_i frozen values") {
  // ln I_0(1) = ln 1.2660659...
  CHECK(log_bessel_i(0.0, 1.0) == doctest::Approx(0.2359143585071786).epsilon(1e-12));
  CHECK(log_bessel_i(0.0, 0.0) == 0.0);
  // half-integer closed form I_{1/2}(x) = sqrt(2/(pi x)) sinh x
  CHECK(log_bessel_i(0.5, 1.0) == doctest::Approx(-0.0643519910735318).epsilon(1e-12));
  // large argument, both sides of the regime split
  CHECK(log_bessel_i(0.0, 30.0) == doctest::Approx(27.38470143317194).epsilon(1e-12));
  CHECK(log_bessel_i(0.0, 31.0) == doctest::Approx(28.36816746236641).epsilon(1e-12));
  CHECK(log_bessel_i(14.0, 31.0) == doctest::Approx(25.20973015491723).epsilon(1e-11));
  CHECK(log_bessel_i(48.5, 97.0) == doctest::Approx(81.84921185973313).epsilon(1e-11));
  CHECK(log_bessel_i(48.5, 200.0) == doctest::Approx(190.5658670946155).epsilon(1e-11));
  CHECK(log_bessel_i(4.0, 1500.0) == doctest::Approx(1495.419199525151).epsilon(1e-11));
  CHECK(log_bessel_i(0.5, 10000.0) == doctest::Approx(9994.475891280807).epsilon(1e-11));
  CHECK(log_bessel_i(7.5, 10000.0) == doctest::Approx(9994.473091140924).epsilon(1e-11));
  CHECK(log_bessel_i(3.0, 1e-3) == doctest::Approx(-24.5944667853543).epsilon(1e-11));
}

TEST_CASE("asymptotic regime at (0, 500) agrees with the refined asymptotic oracle") {
  const double oracle = 500.0 - 0.5 * std::log(2.0 * M_PI * 500.0) + std::log(1.0 + 1.0 / 4000.0);
  CHECK(std::abs(log_bessel_i(0.0, 500.0) - oracle) < 1e-3);
  // exact value for reference (mpmath): 495.9740076681067
  CHECK(log_bessel_i(0.0, 500.0) == doctest::Approx(495.9740076681067).epsilon(1e-12));
}

TEST_CASE("half-integer closed forms across the whole range") {
  // I_{1/2}(x) = sqrt(2/(pi x)) sinh x, with ln sinh x = x + ln(1 - e^{-2x}) - ln 2
  for (double x : {1e-3, 0.5, 3.0, 30.0, 100.0}) {
    const double want = 0.5 * std::log(2.0 / (M_PI * x)) +
                        (x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0));
    CHECK(log_bessel_i(0.5, x) == doctest::Approx(want).epsilon(1e-10));
  }
  // I_{3/2}(x) = sqrt(2/(pi x)) (cosh x - sinh x / x)
  for (double x : {0.5, 3.0, 30.0, 100.0}) {
    const double want =
        0.5 * std::log(2.0 / (M_PI * x)) + std::log(std::cosh(x) - std::sinh(x) / x);
    CHECK(log_bessel_i(1.5, x) == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("bessel_ratio values and bounds") {
  CHECK(bessel_ratio(0.5, 1.0) == doctest::Approx(1.0 / std::tanh(1.0) - 1.0).epsilon(1e-12));
  CHECK(bessel_ratio(3.0, 0.0) == 0.0);
  CHECK(bessel_ratio(3.5, 10.0) == doctest::Approx(0.6644859669060801).epsilon(1e-12));
  // in (0, 1) and strictly increasing in x
  double prev = 0.0;
  for (double x : {0.01, 0.1, 1.0, 5.0, 20.0, 100.0, 1000.0}) {
    const double r = bessel_ratio(2.0, x);
    CHECK(r > prev);
    CHECK(r < 1.0);
    prev = r;
  }
  // cross-check against the series quotient
  for (double nu : {0.0, 1.0, 3.5, 7.0}) {
    for (double x : {0.5, 2.0, 10.0, 25.0}) {
      const double want =
          static_cast<double>(std::exp(series_oracle(nu + 1.0, x) - series_oracle(nu, x)));
      CHECK(bessel_ratio(nu, x) == doctest::Approx(want).epsilon(1e-10));
    }
  }
}

TEST_CASE("dlog_bessel_i values and finite-difference consistency") {
  CHECK(dlog_bessel_i(0.0, 1.0) == doctest::Approx(0.4463899658965345).epsilon(1e-12));
  CHECK(dlog_bessel_i(0.5, 1.0) == doctest::Approx(0.8130352854993313).epsilon(1e-12));
  const double h = 1e-5;
  const double fd =
      (log_bessel_i(2.5, 3.0 + h) - log_bessel_i(2.5, 3.0 - h)) / (2.0 * h);
  CHECK(std::abs(dlog_bessel_i(2.5, 3.0) - fd) < 1e-6);
}

TEST_CASE("d_ratio_log_bessel closed form and finite differences") {
  // 1 - R - R^2 with R = I_1(1)/I_0(1)
  CHECK(d_ratio_log_bessel(0.0, 1.0) == doctest::Approx(0.3543460324503563).epsilon(1e-10));
  const double h = 1e-5;
  const double fd =
      (dlog_bessel_i(1.5, 2.0 + h) - dlog_bessel_i(1.5, 2.0 - h)) / (2.0 * h);
  CHECK(std::abs(d_ratio_log_bessel(1.5, 2.0) - fd) < 1e-6);
  // ln I is asymptotically linear, so the second derivative dies off
  CHECK(std::abs(d_ratio_log_bessel(0.5, 1000.0)) < 1e-3);
}

TEST_CASE("log-concavity in x and log-convexity in ln x") {
  // dlog_bessel_i strictly decreasing in x for nu > 0 on the in-model
  // argument range x <= 2 nu (the concavity region; past a few multiples
  // of nu the derivative turns back up toward its limit 1).
  for (double nu : {0.5, 2.0, 10.0}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double frac = 0.05; frac <= 1.0; frac += 0.05) {
      const double d = dlog_bessel_i(nu, 2.0 * nu * frac);
      CHECK(d < prev);
      prev = d;
    }
  }
  // second differences of ln I_nu(e^u) in u are nonnegative
  for (double nu : {0.5, 2.0, 10.0}) {
    const double du = 0.05;
    for (double u = -2.0; u <= 4.0; u += 0.25) {
      const double f0 = log_bessel_i(nu, std::exp(u - du));
      const double f1 = log_bessel_i(nu, std::exp(u));
      const double f2 = log_bessel_i(nu, std::exp(u + du));
      CHECK(f0 + f2 - 2.0 * f1 >= -1e-9);
    }
  }
}

TEST_CASE("three-term recurrence holds") {
  // I_{nu-1}(x) - I_{nu+1}(x) = (2 nu / x) I_nu(x)
  for (double nu : {1.0, 2.5, 5.0}) {
    for (double x : {0.5, 2.0, 8.0, 20.0}) {
      const double lhs =
          std::exp(log_bessel_i(nu - 1.0, x)) - std::exp(log_bessel_i(nu + 1.0, x));
      const double rhs = 2.0 * nu / x * std::exp(log_bessel_i(nu, x));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
  }
}

TEST_CASE("gamma and digamma") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0));
  CHECK(log_gamma(0.5) == doctest::Approx(0.5723649429247001).epsilon(1e-12));
  CHECK(digamma(1.0) == doctest::Approx(-0.5772156649015329).epsilon(1e-12));
  // psi(x+1) = psi(x) + 1/x
  for (double x : {1e-3, 0.3, 2.7, 11.0, 1e5}) {
    CHECK(digamma(x + 1.0) == doctest::Approx(digamma(x) + 1.0 / x).epsilon(1e-11));
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(log_bessel_i(-0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(log_bessel_i(1.0, -1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_ratio(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(dlog_bessel_i(1.0, 0.0), std::domain_error);
  CHECK(dlog_bessel_i(0.0, 0.0) == 0.0);
  CHECK_THROWS_AS(d_ratio_log_bessel(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(digamma(-1.0), std::domain_error);
}
