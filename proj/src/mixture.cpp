#include "anglerank/mixture.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "anglerank/errors.hpp"
#include "anglerank/model.hpp"
#include "anglerank/rankings.hpp"
#include "anglerank/sir.hpp"
#include "anglerank/specialfn.hpp"

namespace anglerank {

namespace {

constexpr double kKappaBarFloor = 1e-12;

double posterior_mode(double a, double b) { return a > 1.0 ? (a - 1.0) / b : a / b; }

// x d/dx ln I_nu(x) = x I_{nu+1}/I_nu + nu; finite (= nu) at x = 0, which
// an empty cluster can reach.
double x_dlog_bessel(double nu, double x) { return x * bessel_ratio(nu, x) + nu; }

double rel_change(double now, double before) {
  return std::abs(now - before) / std::max(std::abs(now), 1e-300);
}

}  // namespace

std::vector<double> MixturePosterior::tau_mean() const {
  const double total = std::accumulate(d.begin(), d.end(), 0.0);
  std::vector<double> tau(d.size());
  for (size_t g = 0; g < d.size(); ++g) tau[g] = d[g] / total;
  return tau;
}

std::vector<double> MixturePosterior::kappa_mean() const {
  std::vector<double> out(a.size());
  for (size_t g = 0; g < a.size(); ++g) out[g] = a[g] / b[g];
  return out;
}

MixturePosterior fit_mixture_vi(const Eigen::MatrixXd& Y, const MixturePrior& prior,
                                double tol, int max_iter) {
  const int n = static_cast<int>(Y.rows());
  const int t = static_cast<int>(Y.cols());
  const int G = prior.G();
  if (G < 1) throw std::invalid_argument("fit_mixture_vi: G >= 1 required");
  if (n < G) throw std::invalid_argument("fit_mixture_vi: need N >= G");
  if (t < 3) throw std::domain_error("fit_mixture_vi: t >= 3 required");
  for (const auto& c : prior.components) {
    if (c.m0.size() != t) throw std::invalid_argument("fit_mixture_vi: m0 size != t");
    if (!(c.d0 > 0.0) || !(c.a0 > 0.0) || !(c.b0 > 0.0) || !(c.beta0 >= 0.0))
      throw std::invalid_argument("fit_mixture_vi: prior parameters out of range");
  }

  const double nu1 = (t - 3) / 2.0;
  const double nu2 = (t - 2) / 2.0;
  const double lconst = -(nu1 * std::log(2.0) + log_gamma(t + 1.0) + log_gamma((t - 1) / 2.0));

  MixturePosterior post;
  post.t = t;
  post.d.assign(G, 0.0);
  post.beta.assign(G, 0.0);
  post.a.assign(G, 0.0);
  post.b.assign(G, 0.0);
  post.kappa_bar.assign(G, 0.0);
  post.m.assign(G, Eigen::VectorXd::Zero(t));
  post.responsibilities = Eigen::MatrixXd::Constant(n, G, 1.0 / G);

  for (int g = 0; g < G; ++g) {
    const auto& c = prior.components[g];
    post.kappa_bar[g] = std::max(c.a0 / c.b0, 1e-3);
    post.a[g] = c.a0;
    post.b[g] = c.b0;
    post.d[g] = c.d0;
  }

  int it = 0;
  for (; it < max_iter; ++it) {
    double change = 0.0;
    Eigen::MatrixXd rho(n, G);
    double d_total = 0.0;

    for (int g = 0; g < G; ++g) {
      const auto& c = prior.components[g];
      const double npg = post.responsibilities.col(g).sum();

      const double d_new = c.d0 + npg;
      const Eigen::VectorXd s =
          c.beta0 * c.m0 + (post.responsibilities.col(g).transpose() * Y).transpose();
      const double beta_new = s.norm();
      if (beta_new == 0.0)
        throw DegenerateDataError("fit_mixture_vi: cluster direction undefined");
      const double kb = post.kappa_bar[g];
      const double a_new = c.a0 + nu1 * npg + x_dlog_bessel(nu2, beta_new * kb);
      double b_new = c.b0 + npg * dlog_bessel_i(nu1, kb);
      if (c.beta0 > 0.0) b_new += c.beta0 * dlog_bessel_i(nu2, c.beta0 * kb);

      change = std::max({change, rel_change(a_new, post.a[g]), rel_change(b_new, post.b[g]),
                         rel_change(d_new, post.d[g]), rel_change(beta_new, post.beta[g])});
      post.d[g] = d_new;
      post.beta[g] = beta_new;
      post.m[g] = s / beta_new;
      post.a[g] = a_new;
      post.b[g] = b_new;
      d_total += d_new;
    }

    for (int g = 0; g < G; ++g) {
      const double e_ln_kappa = digamma(post.a[g]) - std::log(post.b[g]);
      const double e_ln_tau = digamma(post.d[g]) - digamma(d_total);
      const double e_kappa = post.a[g] / post.b[g];
      const double kb = post.kappa_bar[g];
      const double row_const = nu1 * e_ln_kappa + e_ln_tau + lconst -
                               log_bessel_i(nu1, kb) -
                               dlog_bessel_i(nu1, kb) * (e_kappa - kb);
      rho.col(g) = (Y * post.m[g]) * e_kappa;
      rho.col(g).array() += row_const;
    }
    // Row-wise softmax with max subtraction.
    for (int i = 0; i < n; ++i) {
      const double mx = rho.row(i).maxCoeff();
      Eigen::ArrayXd e = (rho.row(i).array() - mx).exp();
      post.responsibilities.row(i) = (e / e.sum()).matrix();
    }
    for (int g = 0; g < G; ++g)
      post.kappa_bar[g] = std::max(posterior_mode(post.a[g], post.b[g]), kKappaBarFloor);

    if (it > 1 && change <= tol) break;
  }
  if (it >= max_iter) throw ConvergenceError("fit_mixture_vi: no convergence within max_iter");

  post.iters = it + 1;
  for (int g = 0; g < G; ++g)
    if (post.responsibilities.col(g).sum() < 1e-3) post.empty_cluster = true;
  return post;
}

MixturePosterior fit_mixture_vi_restarts(const Eigen::MatrixXd& Y, int G,
                                         const MixtureComponentPrior& base, int restarts,
                                         std::mt19937_64& rng, double tol, int max_iter) {
  if (restarts < 1) throw std::invalid_argument("fit_mixture_vi_restarts: restarts >= 1");
  const int t = static_cast<int>(Y.cols());
  std::normal_distribution<double> gauss(0.0, 1.0);

  MixturePosterior best;
  double best_dev = std::numeric_limits<double>::infinity();
  for (int rep = 0; rep < restarts; ++rep) {
    MixturePrior prior;
    for (int g = 0; g < G; ++g) {
      MixtureComponentPrior c = base;
      Eigen::VectorXd m0(t);
      do {
        for (int i = 0; i < t; ++i) m0[i] = gauss(rng);
      } while (m0.norm() == 0.0);
      c.m0 = m0 / m0.norm();
      prior.components.push_back(std::move(c));
    }
    MixturePosterior post = fit_mixture_vi(Y, prior, tol, max_iter);
    const double dev = mixture_deviance(Y, post.tau_mean(), post.kappa_mean(), post.m);
    if (dev < best_dev) {
      best_dev = dev;
      best = std::move(post);
    }
  }
  return best;
}

double mixture_deviance(const Eigen::MatrixXd& Y, const std::vector<double>& tau,
                        const std::vector<double>& kappas,
                        const std::vector<Eigen::VectorXd>& thetas) {
  const int n = static_cast<int>(Y.rows());
  const int t = static_cast<int>(Y.cols());
  const int G = static_cast<int>(tau.size());
  if (kappas.size() != tau.size() || thetas.size() != tau.size())
    throw std::invalid_argument("mixture_deviance: component count mismatch");

  // Exact per-component log-normalizers where enumeration is feasible; the
  // approximation's kappa-dependent error otherwise biases the comparison
  // across G.
  std::vector<double> log_z(G);
  for (int g = 0; g < G; ++g) {
    log_z[g] = t <= 10 ? -log_norm_const_exact(t, kappas[g], thetas[g])
                       : -log_norm_const_approx(t, kappas[g]);
  }

  double dev = 0.0;
  Eigen::MatrixXd dots(n, G);
  for (int g = 0; g < G; ++g) dots.col(g) = Y * thetas[g] * kappas[g];
  for (int i = 0; i < n; ++i) {
    double mx = -std::numeric_limits<double>::infinity();
    for (int g = 0; g < G; ++g)
      mx = std::max(mx, std::log(std::max(tau[g], 1e-300)) + dots(i, g) - log_z[g]);
    double sum = 0.0;
    for (int g = 0; g < G; ++g)
      sum += std::exp(std::log(std::max(tau[g], 1e-300)) + dots(i, g) - log_z[g] - mx);
    dev += mx + std::log(sum);
  }
  return -2.0 * dev;
}

DicResult dic(const Eigen::MatrixXd& Y, const MixturePosterior& post, std::mt19937_64& rng,
              int samples) {
  const int G = post.G();
  if (G < 1) throw std::invalid_argument("dic: unfitted posterior");

  double dbar = 0.0;
  for (int s = 0; s < samples; ++s) {
    // tau ~ Dirichlet(d) by normalized gammas.
    std::vector<double> tau(G);
    double tau_sum = 0.0;
    for (int g = 0; g < G; ++g) {
      std::gamma_distribution<double> gd(post.d[g], 1.0);
      tau[g] = gd(rng);
      tau_sum += tau[g];
    }
    for (double& v : tau) v /= tau_sum;

    std::vector<double> kap(G);
    std::vector<Eigen::VectorXd> ths(G);
    for (int g = 0; g < G; ++g) {
      std::gamma_distribution<double> gk(post.a[g], 1.0 / post.b[g]);
      kap[g] = gk(rng);
      ths[g] = sample_vmf(post.m[g], post.beta[g] * kap[g], rng);
    }
    dbar += mixture_deviance(Y, tau, kap, ths);
  }
  dbar /= samples;

  DicResult out;
  out.d_bar = dbar;
  out.d_hat = mixture_deviance(Y, post.tau_mean(), post.kappa_mean(), post.m);
  out.p_d = out.d_bar - out.d_hat;
  out.dic = out.d_bar + out.p_d;
  return out;
}

Classification classify(const Eigen::VectorXd& y, const MixturePosterior& post) {
  const int G = post.G();
  const int t = post.t;
  if (y.size() != t) throw std::invalid_argument("classify: dimension mismatch");
  const double nu1 = (t - 3) / 2.0;
  const double lconst = -(nu1 * std::log(2.0) + log_gamma(t + 1.0) + log_gamma((t - 1) / 2.0));
  const double d_total = std::accumulate(post.d.begin(), post.d.end(), 0.0);

  Eigen::VectorXd rho(G);
  for (int g = 0; g < G; ++g) {
    const double e_kappa = post.a[g] / post.b[g];
    const double kb = post.kappa_bar[g];
    rho[g] = nu1 * (digamma(post.a[g]) - std::log(post.b[g])) +
             (digamma(post.d[g]) - digamma(d_total)) + e_kappa * post.m[g].dot(y) + lconst -
             log_bessel_i(nu1, kb) - dlog_bessel_i(nu1, kb) * (e_kappa - kb);
  }
  const double mx = rho.maxCoeff();
  Eigen::VectorXd p = (rho.array() - mx).exp();
  p /= p.sum();

  Classification out;
  out.responsibilities = p;
  p.maxCoeff(&out.cluster);
  return out;
}

}  // namespace anglerank
