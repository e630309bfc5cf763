#pragma once

// Variational Bayes for the single-population model: q(theta|kappa) is
// vMF(m, beta kappa) in closed form, q(kappa) is Gamma(a, b) found by a
// re-linearized fixed point, plus the approximate predictive density.

#include <Eigen/Dense>

namespace anglerank {

struct VmfGammaPrior {
  Eigen::VectorXd m0;   // unit vector
  double beta0 = 1e-3;  // prior direction weight
  double a0 = 1e-3;     // Gamma shape
  double b0 = 1e-3;     // Gamma rate
};

struct VmfGammaPosterior {
  int t = 0;
  Eigen::VectorXd m;
  double beta = 0.0;
  double a = 0.0;
  double b = 0.0;
  double kappa_bar = 0.0;  // expansion point: (a-1)/b if a > 1 else a/b
  int iters = 0;

  double kappa_mean() const { return a / b; }
};

// Rows of Y are standardized rankings.  m and beta come out in closed form;
// (a, b, kappa_bar) iterate until |da|/a + |db|/b <= tol.
VmfGammaPosterior fit_vi(const Eigen::MatrixXd& Y, const VmfGammaPrior& prior,
                         double tol = 1e-8, int max_iter = 1000);

// The kappa-only part of the objective and its tangent lower bound
// expanded at kappa_bar; the bound is tight at kappa = kappa_bar.
struct GContext {
  int t = 0;
  int n = 0;         // number of observations
  double a0 = 0.0;
  double b0 = 0.0;
  double beta0 = 0.0;
  double beta = 0.0;
};

double exact_g(double kappa, const GContext& ctx);
double lower_bound_g(double kappa, double kappa_bar, const GContext& ctx);

// Log of the approximate predictive density of a new standardized ranking.
// Throws PredictiveExpansionError when the expansion is invalid
// (b + r(y) <= 0 or nonpositive Gamma shape).
double predictive_log_density(const VmfGammaPosterior& post, const Eigen::VectorXd& y_new);

}  // namespace anglerank
