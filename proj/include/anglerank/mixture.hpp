#pragma once

// Variational inference for the G-component mixture, soft clustering,
// classification of new rankings, and DIC model selection.

#include <Eigen/Dense>
#include <random>
#include <vector>

namespace anglerank {

struct MixtureComponentPrior {
  Eigen::VectorXd m0;
  double d0 = 1e-3;     // Dirichlet weight
  double beta0 = 1e-3;
  double a0 = 1e-3;
  double b0 = 1e-3;
};

struct MixturePrior {
  std::vector<MixtureComponentPrior> components;
  int G() const { return static_cast<int>(components.size()); }
};

struct MixturePosterior {
  int t = 0;
  std::vector<double> d, beta, a, b, kappa_bar;
  std::vector<Eigen::VectorXd> m;
  Eigen::MatrixXd responsibilities;  // N x G, rows sum to 1
  int iters = 0;
  bool empty_cluster = false;  // some sum_i p_ig fell below 1e-3

  int G() const { return static_cast<int>(d.size()); }
  std::vector<double> tau_mean() const;    // d_g / sum d
  std::vector<double> kappa_mean() const;  // a_g / b_g
};

// Cyclic updates of {d, beta, m, a, b, p, kappa_bar} from responsibilities
// initialized at 1/G, until the largest relative parameter change <= tol.
MixturePosterior fit_mixture_vi(const Eigen::MatrixXd& Y, const MixturePrior& prior,
                                double tol = 1e-8, int max_iter = 2000);

// Runs `restarts` fits with freshly drawn random unit m0 per component
// (other prior fields from `base`), keeping the lowest plug-in deviance.
MixturePosterior fit_mixture_vi_restarts(const Eigen::MatrixXd& Y, int G,
                                         const MixtureComponentPrior& base, int restarts,
                                         std::mt19937_64& rng, double tol = 1e-8,
                                         int max_iter = 2000);

// -2 sum_i ln sum_g tau_g p(y_i | kappa_g, theta_g).  Component
// normalizers are exact (enumeration) for t <= 10, approximate beyond.
double mixture_deviance(const Eigen::MatrixXd& Y, const std::vector<double>& tau,
                        const std::vector<double>& kappas,
                        const std::vector<Eigen::VectorXd>& thetas);

struct DicResult {
  double dic = 0.0;
  double d_bar = 0.0;  // mean deviance over posterior draws
  double d_hat = 0.0;  // deviance at posterior means
  double p_d = 0.0;    // effective parameter count, d_bar - d_hat
};

// Posterior-mean plug-in DIC with d_bar averaged over `samples` draws from
// the variational posteriors (tau from Dirichlet(d), kappa_g from
// Gamma(a_g, b_g), theta_g from vMF(m_g, beta_g kappa_g)).
DicResult dic(const Eigen::MatrixXd& Y, const MixturePosterior& post, std::mt19937_64& rng,
              int samples = 200);

struct Classification {
  int cluster = 0;
  Eigen::VectorXd responsibilities;
};

// Responsibilities of a single new standardized ranking under the fitted
// posterior, and the arg-max cluster.
Classification classify(const Eigen::VectorXd& y, const MixturePosterior& post);

}  // namespace anglerank
