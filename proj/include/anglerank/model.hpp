#pragma once

// The angle-based density over permutations: p(y | kappa, theta)
// proportional to exp(kappa theta' y), with the Bessel-based approximate
// normalizing constant shared by all theta.

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "anglerank/rankings.hpp"

namespace anglerank {

struct AngleModel {
  int t = 0;
  double kappa = 0.0;
  Eigen::VectorXd theta;  // unit norm

  AngleModel(int t_, double kappa_, Eigen::VectorXd theta_);
};

// ln C_t(kappa) = (t-3)/2 ln(kappa/2) - ln t! - ln I_{(t-3)/2}(kappa)
//                 - ln Gamma((t-1)/2);  exactly -ln t! at kappa = 0.
double log_norm_const_approx(int t, double kappa);

// -logsumexp over all t! permutations of kappa theta' y.  The brute-force
// oracle; guarded at t <= 10.
double log_norm_const_exact(int t, double kappa, const Eigen::VectorXd& theta);

// ln C_t(kappa) + kappa theta' y (approximate constant).
double log_density(const AngleModel& model, const Eigen::VectorXd& y);

// Random-walk Metropolis over permutations: the proposal swaps two
// uniformly chosen positions, acceptance exp(kappa theta'(y' - y)).
// Defaults (negative arguments): burn_in = 1000 t, thin = t.
std::vector<Ranking> sample(const AngleModel& model, int n, std::mt19937_64& rng,
                            int burn_in = -1, int thin = -1);

struct KldResult {
  double value = 0.0;
  bool clamped = false;  // Monte Carlo estimate was negative and clamped to 0
};

// KL(p || q) by full enumeration, with both models normalized over the
// permutation set so kld_exact(p, p) is exactly 0.  Guarded at t <= 10.
KldResult kld_exact(const AngleModel& p, const AngleModel& q);

// Sample-average estimate of E_p[ln p - ln q] using the approximate
// constants; negative estimates clamp to 0 with the flag set.
KldResult kld_monte_carlo(const AngleModel& p, const AngleModel& q, int n,
                          std::mt19937_64& rng);

struct NcErrorTable {
  std::vector<int> ts;
  std::vector<double> kappas;
  Eigen::MatrixXd percent_error;  // rows follow kappas, columns follow ts
};

// |ln C_approx - ln C_exact| / |ln C_exact| * 100 per cell, with the exact
// constant evaluated at theta = standardize(identity ranking).
NcErrorTable nc_error_table(int min_t, int max_t, const std::vector<double>& kappas);

}  // namespace anglerank
