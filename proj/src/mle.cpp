#include "anglerank/mle.hpp"

#include <cmath>
#include <stdexcept>

#include "anglerank/errors.hpp"
#include "anglerank/model.hpp"
#include "anglerank/specialfn.hpp"

namespace anglerank {

double mean_resultant(int t, double kappa) {
  if (t < 3) throw std::domain_error("mean_resultant: t >= 3 required");
  return bessel_ratio((t - 3) / 2.0, kappa);
}

namespace {

// A_t is strictly increasing, so the root of A_t(kappa) = r brackets
// easily; used when Newton leaves (0, inf).
double bisect_kappa(int t, double r, double tol) {
  double lo = 1e-12, hi = 1.0;
  while (mean_resultant(t, hi) < r) {
    hi *= 2.0;
    if (hi > 1e12) throw ConvergenceError("fit_mle: bisection bracket failed");
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double val = mean_resultant(t, mid);
    if (std::abs(val - r) <= tol) return mid;
    (val < r ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

MleFit fit_mle(const Eigen::MatrixXd& Y, double tol, int max_iter) {
  const int n = static_cast<int>(Y.rows());
  const int t = static_cast<int>(Y.cols());
  if (n < 1) throw std::invalid_argument("fit_mle: need at least one observation");
  if (t < 3) throw std::domain_error("fit_mle: t >= 3 required");

  const Eigen::VectorXd s = Y.colwise().sum().transpose();
  const double norm = s.norm();
  if (norm == 0.0)
    throw DegenerateDataError("fit_mle: mean resultant is zero, theta undefined");
  const double r = norm / n;
  if (r >= 1.0 - 1e-12)
    throw SaturationError("fit_mle: mean resultant at 1, kappa diverges");

  MleFit fit;
  fit.theta_hat = s / norm;
  fit.r = r;

  // Banerjee start, then Newton on A_t(kappa) - r.
  double kappa = r * (t - 1 - r * r) / (1.0 - r * r);
  bool newton_ok = true;
  int it = 0;
  for (; it < max_iter; ++it) {
    const double a = mean_resultant(t, kappa);
    if (std::abs(a - r) <= tol) break;
    const double deriv = 1.0 - a * a - (t - 2) / kappa * a;
    const double next = kappa - (a - r) / deriv;
    if (!(next > 0.0) || !std::isfinite(next)) {
      newton_ok = false;
      break;
    }
    kappa = next;
  }
  if (!newton_ok) {
    kappa = bisect_kappa(t, r, tol);
    fit.used_bisection = true;
  } else if (it >= max_iter && std::abs(mean_resultant(t, kappa) - r) > tol) {
    throw ConvergenceError("fit_mle: Newton did not reach tolerance");
  }
  fit.kappa_hat = kappa;
  fit.newton_iters = it;
  return fit;
}

double log_likelihood(const Eigen::MatrixXd& Y, double kappa, const Eigen::VectorXd& theta) {
  if (theta.size() != Y.cols()) throw std::invalid_argument("log_likelihood: dimension mismatch");
  const int n = static_cast<int>(Y.rows());
  const int t = static_cast<int>(Y.cols());
  const Eigen::VectorXd s = Y.colwise().sum().transpose();
  return n * log_norm_const_approx(t, kappa) + kappa * theta.dot(s);
}

}  // namespace anglerank
