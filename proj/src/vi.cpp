#include "anglerank/vi.hpp"

#include <cmath>
#include <stdexcept>

#include "anglerank/errors.hpp"
#include "anglerank/specialfn.hpp"

namespace anglerank {

namespace {

constexpr double kKappaBarFloor = 1e-3;

double posterior_mode(double a, double b) { return a > 1.0 ? (a - 1.0) / b : a / b; }

}  // namespace

VmfGammaPosterior fit_vi(const Eigen::MatrixXd& Y, const VmfGammaPrior& prior,
                         double tol, int max_iter) {
  const int n = static_cast<int>(Y.rows());
  const int t = static_cast<int>(Y.cols());
  if (n < 1) throw std::invalid_argument("fit_vi: need at least one observation");
  if (t < 3) throw std::domain_error("fit_vi: t >= 3 required");
  if (prior.m0.size() != t) throw std::invalid_argument("fit_vi: prior m0 size != t");
  if (!(prior.a0 > 0.0) || !(prior.b0 > 0.0) || !(prior.beta0 >= 0.0))
    throw std::invalid_argument("fit_vi: prior parameters out of range");

  const double nu1 = (t - 3) / 2.0;
  const double nu2 = (t - 2) / 2.0;

  VmfGammaPosterior post;
  post.t = t;
  const Eigen::VectorXd s =
      prior.beta0 * prior.m0 + Y.colwise().sum().transpose();
  post.beta = s.norm();
  if (post.beta == 0.0)
    throw DegenerateDataError("fit_vi: beta0 m0 + sum(y) vanished, m undefined");
  post.m = s / post.beta;

  double kb = std::max(prior.a0 / prior.b0, kKappaBarFloor);
  double a = prior.a0, b = prior.b0;
  int it = 0;
  for (; it < max_iter; ++it) {
    const double a_new = prior.a0 + n * nu1 + post.beta * kb * dlog_bessel_i(nu2, post.beta * kb);
    double b_new = prior.b0 + n * dlog_bessel_i(nu1, kb);
    if (prior.beta0 > 0.0) b_new += prior.beta0 * dlog_bessel_i(nu2, prior.beta0 * kb);
    const double rel = std::abs(a_new - a) / a_new + std::abs(b_new - b) / b_new;
    a = a_new;
    b = b_new;
    kb = std::max(posterior_mode(a, b), 1e-12);
    if (it > 0 && rel <= tol) break;
  }
  if (it >= max_iter) throw ConvergenceError("fit_vi: no convergence within max_iter");

  post.a = a;
  post.b = b;
  post.kappa_bar = kb;
  post.iters = it + 1;
  return post;
}

double exact_g(double kappa, const GContext& ctx) {
  if (!(kappa > 0.0)) throw std::domain_error("exact_g: kappa > 0 required");
  const double nu1 = (ctx.t - 3) / 2.0;
  const double nu2 = (ctx.t - 2) / 2.0;
  double g = (ctx.n * nu1 + ctx.a0 - 1.0) * std::log(kappa) - ctx.b0 * kappa -
             ctx.n * log_bessel_i(nu1, kappa) + log_bessel_i(nu2, kappa * ctx.beta);
  if (ctx.beta0 > 0.0) g -= log_bessel_i(nu2, kappa * ctx.beta0);
  return g;
}

double lower_bound_g(double kappa, double kappa_bar, const GContext& ctx) {
  if (!(kappa > 0.0) || !(kappa_bar > 0.0))
    throw std::domain_error("lower_bound_g: kappa, kappa_bar > 0 required");
  const double nu1 = (ctx.t - 3) / 2.0;
  const double nu2 = (ctx.t - 2) / 2.0;
  double g = (ctx.n * nu1 + ctx.a0 - 1.0) * std::log(kappa) - ctx.b0 * kappa;
  // Data term: tangent in kappa (concavity of ln I in its argument).
  g -= ctx.n * (log_bessel_i(nu1, kappa_bar) +
                dlog_bessel_i(nu1, kappa_bar) * (kappa - kappa_bar));
  // Prior normalizer: tangent in kappa as well.
  if (ctx.beta0 > 0.0)
    g -= log_bessel_i(nu2, ctx.beta0 * kappa_bar) +
         ctx.beta0 * dlog_bessel_i(nu2, ctx.beta0 * kappa_bar) * (kappa - kappa_bar);
  // Entropy-side term: tangent in ln kappa (convexity of ln I in ln x).
  g += log_bessel_i(nu2, ctx.beta * kappa_bar) +
       dlog_bessel_i(nu2, ctx.beta * kappa_bar) * ctx.beta * kappa_bar *
           (std::log(kappa) - std::log(kappa_bar));
  return g;
}

double predictive_log_density(const VmfGammaPosterior& post, const Eigen::VectorXd& y_new) {
  const int t = post.t;
  if (y_new.size() != t)
    throw std::invalid_argument("predictive_log_density: dimension mismatch");
  const double nu1 = (t - 3) / 2.0;
  const double nu2 = (t - 2) / 2.0;
  const double kb = post.kappa_bar;
  const double beta = post.beta;

  const double eta = (y_new + beta * post.m).norm();
  const double s = -eta * eta * kb * kb * d_ratio_log_bessel(nu2, eta * kb) +
                   beta * beta * kb * kb * d_ratio_log_bessel(nu2, beta * kb) +
                   kb * kb * d_ratio_log_bessel(nu1, kb);
  const double r = s / kb - eta * dlog_bessel_i(nu2, eta * kb) +
                   beta * dlog_bessel_i(nu2, beta * kb) + dlog_bessel_i(nu1, kb);

  if (!(post.b + r > 0.0))
    throw PredictiveExpansionError("predictive_log_density: b + r(y) <= 0");
  const double shape = post.a + s + (t - 1) / 2.0 - 1.0;
  if (!(shape > 0.0))
    throw PredictiveExpansionError("predictive_log_density: nonpositive Gamma shape");

  const double log_h = -log_gamma((t - 1) / 2.0) - log_gamma(t + 1.0) -
                       nu1 * std::log(2.0) + nu2 * (std::log(beta) - std::log(eta));
  const double log_l = log_bessel_i(nu2, eta * kb) - log_bessel_i(nu1, kb) -
                       log_bessel_i(nu2, beta * kb);
  // Marginalizing Gamma(kappa | a, b) against l(kappa) kappa^{(t-3)/2}
  // leaves the b^a / Gamma(a) normalizer in front of the shifted-shape
  // Gamma integral.
  return log_h + log_l + r * kb - s * std::log(kb) + post.a * std::log(post.b) -
         shape * std::log(post.b + r) + log_gamma(shape) - log_gamma(post.a);
}

}  // namespace anglerank
