#pragma once

// Maximum likelihood: theta is the normalized sample mean, kappa solves
// A_t(kappa) = r by Newton's iteration from the Banerjee start.

#include <Eigen/Dense>

namespace anglerank {

struct MleFit {
  Eigen::VectorXd theta_hat;
  double kappa_hat = 0.0;
  double r = 0.0;  // mean resultant length
  int newton_iters = 0;
  bool used_bisection = false;
};

// A_t(kappa) = I_{(t-1)/2}(kappa) / I_{(t-3)/2}(kappa), the model's
// mean-resultant function.
double mean_resultant(int t, double kappa);

// Rows of Y are standardized rankings.  Throws DegenerateDataError when
// r = 0, SaturationError when r >= 1 - 1e-12, ConvergenceError after
// max_iter without |A_t(kappa) - r| <= tol.
MleFit fit_mle(const Eigen::MatrixXd& Y, double tol = 1e-10, int max_iter = 100);

// N ln C_t(kappa) + kappa theta' sum_i y_i.
double log_likelihood(const Eigen::MatrixXd& Y, double kappa, const Eigen::VectorXd& theta);

}  // namespace anglerank
