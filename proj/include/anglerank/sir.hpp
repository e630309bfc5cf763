#pragma once

// Conjugate-Bayes posterior by sampling-importance-resampling: gamma
// proposal for kappa, exact log-space importance weights against
// p(kappa | Y), then theta | kappa ~ vMF(m, beta kappa).

#include <Eigen/Dense>
#include <random>
#include <span>
#include <vector>

#include "anglerank/vi.hpp"

namespace anglerank {

// The conjugate prior of Eq.-(4) form: [C_t(kappa)]^{nu0} exp(beta0 kappa m0' theta).
struct ConjugatePrior {
  Eigen::VectorXd m0;
  double beta0 = 1e-3;
  double nu0 = 0.0;
};

struct SirOptions {
  int n_candidates = 10000;
  int n_resample = 1000;
  // Proposal Gamma moments; NaN mean = use the MLE kappa.
  double proposal_mean = std::numeric_limits<double>::quiet_NaN();
  double proposal_var = 1.0;
};

struct PosteriorSample {
  std::vector<double> kappa_draws;
  std::vector<Eigen::VectorXd> theta_draws;
  Eigen::VectorXd m;   // posterior vMF direction
  double beta = 0.0;   // posterior vMF scale
  double ess = 0.0;    // effective sample size of the importance weights
  bool with_replacement = false;  // resampling mode that ran
  bool weight_degeneracy = false; // ess < 0.01 * n_candidates

  double kappa_mean() const;
  Eigen::VectorXd theta_mean_direction() const;
};

PosteriorSample fit_sir(const Eigen::MatrixXd& Y, const ConjugatePrior& prior,
                        const SirOptions& opts, std::mt19937_64& rng);

// Same procedure, but the weights target the posterior under the
// vMF-Gamma prior used by fit_vi, so both methods approximate the same
// distribution.
PosteriorSample fit_sir(const Eigen::MatrixXd& Y, const VmfGammaPrior& prior,
                        const SirOptions& opts, std::mt19937_64& rng);

// Ulrich-Wood rejection sampler for the von Mises-Fisher distribution on
// the unit sphere in R^p (p = mean_dir.size()).
Eigen::VectorXd sample_vmf(const Eigen::VectorXd& mean_dir, double concentration,
                           std::mt19937_64& rng);

// Moment-fit Gamma distributions to both draws, then the closed-form
// symmetric Gamma KL divergence.
double symmetric_kld_kappa(std::span<const double> draws_a, std::span<const double> draws_b);

}  // namespace anglerank
