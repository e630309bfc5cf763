#include "anglerank/sir.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "anglerank/errors.hpp"
#include "anglerank/mle.hpp"
#include "anglerank/specialfn.hpp"

namespace anglerank {

double PosteriorSample::kappa_mean() const {
  if (kappa_draws.empty()) return 0.0;
  return std::accumulate(kappa_draws.begin(), kappa_draws.end(), 0.0) / kappa_draws.size();
}

Eigen::VectorXd PosteriorSample::theta_mean_direction() const {
  if (theta_draws.empty()) throw std::logic_error("PosteriorSample: no theta draws");
  Eigen::VectorXd s = Eigen::VectorXd::Zero(theta_draws.front().size());
  for (const auto& th : theta_draws) s += th;
  const double n = s.norm();
  if (n == 0.0) throw DegenerateDataError("PosteriorSample: mean direction undefined");
  return s / n;
}

namespace {

// Shared SIR body; log_target evaluates ln p(kappa | Y) up to a constant.
template <typename LogTarget>
PosteriorSample run_sir(const Eigen::MatrixXd& Y, const Eigen::VectorXd& prior_dir,
                        double prior_beta0, const SirOptions& opts, std::mt19937_64& rng,
                        LogTarget&& log_target) {
  const int t = static_cast<int>(Y.cols());
  if (t < 3) throw std::domain_error("fit_sir: t >= 3 required");
  if (opts.n_resample > opts.n_candidates)
    throw std::invalid_argument("fit_sir: n_resample > n_candidates");
  if (!(opts.proposal_var > 0.0)) throw std::invalid_argument("fit_sir: proposal_var > 0 required");

  PosteriorSample out;
  const Eigen::VectorXd s = prior_beta0 * prior_dir + Y.colwise().sum().transpose();
  out.beta = s.norm();
  if (out.beta == 0.0) throw DegenerateDataError("fit_sir: posterior direction undefined");
  out.m = s / out.beta;

  double mean = opts.proposal_mean;
  if (std::isnan(mean)) mean = fit_mle(Y).kappa_hat;
  if (!(mean > 0.0)) throw std::invalid_argument("fit_sir: proposal mean must be positive");
  const double shape = mean * mean / opts.proposal_var;
  const double scale = opts.proposal_var / mean;
  std::gamma_distribution<double> proposal(shape, scale);

  // Candidates and log weights; everything stays in log space until the
  // single max-subtracted exponentiation.
  std::vector<double> cand(opts.n_candidates), logw(opts.n_candidates);
  const double lgamma_shape = log_gamma(shape);
  for (int i = 0; i < opts.n_candidates; ++i) {
    double k = proposal(rng);
    while (!(k > 0.0)) k = proposal(rng);
    cand[i] = k;
    const double log_prop =
        (shape - 1.0) * std::log(k) - k / scale - shape * std::log(scale) - lgamma_shape;
    logw[i] = log_target(k) - log_prop;
  }
  const double wmax = *std::max_element(logw.begin(), logw.end());
  std::vector<double> w(opts.n_candidates);
  double wsum = 0.0, w2sum = 0.0;
  for (int i = 0; i < opts.n_candidates; ++i) {
    w[i] = std::exp(logw[i] - wmax);
    wsum += w[i];
    w2sum += w[i] * w[i];
  }
  out.ess = wsum * wsum / w2sum;
  out.weight_degeneracy = out.ess < 0.01 * opts.n_candidates;

  // Resample: without replacement (exponential-clock keys) unless the
  // requested size exceeds the effective sample size.
  out.with_replacement = opts.n_resample > out.ess;
  std::vector<int> picked;
  picked.reserve(opts.n_resample);
  if (out.with_replacement) {
    std::discrete_distribution<int> res(w.begin(), w.end());
    for (int i = 0; i < opts.n_resample; ++i) picked.push_back(res(rng));
  } else {
    std::vector<std::pair<double, int>> keys(opts.n_candidates);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < opts.n_candidates; ++i) {
      const double gumbel = -std::log(-std::log(unif(rng)));
      keys[i] = {logw[i] + gumbel, i};
    }
    std::partial_sort(keys.begin(), keys.begin() + opts.n_resample, keys.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int i = 0; i < opts.n_resample; ++i) picked.push_back(keys[i].second);
  }

  out.kappa_draws.reserve(opts.n_resample);
  out.theta_draws.reserve(opts.n_resample);
  for (int idx : picked) {
    const double k = cand[idx];
    out.kappa_draws.push_back(k);
    out.theta_draws.push_back(sample_vmf(out.m, out.beta * k, rng));
  }
  return out;
}

}  // namespace

PosteriorSample fit_sir(const Eigen::MatrixXd& Y, const ConjugatePrior& prior,
                        const SirOptions& opts, std::mt19937_64& rng) {
  const int t = static_cast<int>(Y.cols());
  const int n = static_cast<int>(Y.rows());
  if (prior.m0.size() != t) throw std::invalid_argument("fit_sir: prior m0 size != t");
  const double nu1 = (t - 3) / 2.0;
  const double nu2 = (t - 2) / 2.0;
  const double exponent = prior.nu0 + n;
  const Eigen::VectorXd s = prior.beta0 * prior.m0 + Y.colwise().sum().transpose();
  const double beta = s.norm();
  return run_sir(Y, prior.m0, prior.beta0, opts, rng, [=](double k) {
    // p(kappa|Y) of Eq. (5): kappa^{(t-3)/2 (nu0+N)} I_{(t-2)/2}(beta kappa)
    //                        / (I_{(t-3)/2}(kappa)^{nu0+N} (beta kappa)^{(t-2)/2})
    return nu1 * exponent * std::log(k) + log_bessel_i(nu2, beta * k) -
           exponent * log_bessel_i(nu1, k) - nu2 * std::log(beta * k);
  });
}

PosteriorSample fit_sir(const Eigen::MatrixXd& Y, const VmfGammaPrior& prior,
                        const SirOptions& opts, std::mt19937_64& rng) {
  const int t = static_cast<int>(Y.cols());
  const int n = static_cast<int>(Y.rows());
  if (prior.m0.size() != t) throw std::invalid_argument("fit_sir: prior m0 size != t");
  const double nu1 = (t - 3) / 2.0;
  const double nu2 = (t - 2) / 2.0;
  const Eigen::VectorXd s = prior.beta0 * prior.m0 + Y.colwise().sum().transpose();
  const double beta = s.norm();
  return run_sir(Y, prior.m0, prior.beta0, opts, rng, [=](double k) {
    // Gamma(a0, b0) prior times V_t(beta0 kappa) / V_t(beta kappa) times
    // the kappa part of C_t(kappa)^N: the exact posterior under the
    // vMF-Gamma prior that fit_vi approximates.
    double v = n * nu1 * std::log(k) - n * log_bessel_i(nu1, k) +
               (prior.a0 - 1.0) * std::log(k) - prior.b0 * k -
               nu2 * std::log(beta * k) + log_bessel_i(nu2, beta * k);
    if (prior.beta0 > 0.0)
      v += nu2 * std::log(prior.beta0 * k) - log_bessel_i(nu2, prior.beta0 * k);
    return v;
  });
}

Eigen::VectorXd sample_vmf(const Eigen::VectorXd& mean_dir, double concentration,
                           std::mt19937_64& rng) {
  const int p = static_cast<int>(mean_dir.size());
  if (p < 2) throw std::invalid_argument("sample_vmf: dimension >= 2 required");
  if (!(concentration >= 0.0)) throw std::domain_error("sample_vmf: concentration >= 0 required");
  std::normal_distribution<double> gauss(0.0, 1.0);

  if (concentration == 0.0) {
    Eigen::VectorXd v(p);
    do {
      for (int i = 0; i < p; ++i) v[i] = gauss(rng);
    } while (v.norm() == 0.0);
    return v / v.norm();
  }

  // Ulrich-Wood: beta-distributed cosine by rejection, then a uniform
  // tangent direction.
  const double kappa = concentration;
  const double b = (-2.0 * kappa + std::sqrt(4.0 * kappa * kappa + (p - 1.0) * (p - 1.0))) /
                   (p - 1.0);
  const double x0 = (1.0 - b) / (1.0 + b);
  const double c = kappa * x0 + (p - 1.0) * std::log(1.0 - x0 * x0);
  std::gamma_distribution<double> half((p - 1.0) / 2.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  double w = 0.0;
  for (;;) {
    const double g1 = half(rng), g2 = half(rng);
    const double z = g1 / (g1 + g2);
    w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z);
    if (kappa * w + (p - 1.0) * std::log(1.0 - x0 * w) - c >= std::log(unif(rng))) break;
  }

  Eigen::VectorXd v(p);
  for (int i = 0; i < p; ++i) v[i] = gauss(rng);
  v -= v.dot(mean_dir) * mean_dir;
  double nrm = v.norm();
  while (nrm == 0.0) {
    for (int i = 0; i < p; ++i) v[i] = gauss(rng);
    v -= v.dot(mean_dir) * mean_dir;
    nrm = v.norm();
  }
  v /= nrm;
  return std::sqrt(std::max(0.0, 1.0 - w * w)) * v + w * mean_dir;
}

namespace {

struct GammaMoments {
  double shape, rate;
};

GammaMoments moment_fit(std::span<const double> draws) {
  if (draws.empty()) throw std::invalid_argument("symmetric_kld_kappa: empty draws");
  const double n = static_cast<double>(draws.size());
  double mean = 0.0;
  for (double v : draws) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : draws) var += (v - mean) * (v - mean);
  var /= n;
  if (!(var > 0.0)) throw DegenerateDataError("symmetric_kld_kappa: zero-variance draws");
  return {mean * mean / var, mean / var};
}

double gamma_kl(const GammaMoments& f, const GammaMoments& g) {
  return (f.shape - g.shape) * digamma(f.shape) - log_gamma(f.shape) + log_gamma(g.shape) +
         g.shape * (std::log(f.rate) - std::log(g.rate)) +
         f.shape * (g.rate - f.rate) / f.rate;
}

}  // namespace

double symmetric_kld_kappa(std::span<const double> draws_a, std::span<const double> draws_b) {
  const GammaMoments fa = moment_fit(draws_a);
  const GammaMoments fb = moment_fit(draws_b);
  return gamma_kl(fa, fb) + gamma_kl(fb, fa);
}

}  // namespace anglerank
