#pragma once

// Inference from incomplete rankings: Gibbs alternation between
// Metropolis-Hastings imputation over compatibility classes and
// complete-data (kappa, theta) refits.

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "anglerank/model.hpp"
#include "anglerank/rankings.hpp"
#include "anglerank/sir.hpp"
#include "anglerank/vi.hpp"

namespace anglerank {

// n_inner MH steps targeting p(R* | theta, kappa) restricted to the
// compatibility class, with uniform proposals from it.  The input must be
// compatible; the output is compatible by construction.
Ranking mh_impute_step(const IncompleteRanking& partial, const Ranking& current,
                       const AngleModel& model, int n_inner, std::mt19937_64& rng);

enum class GibbsBackend { kVi, kSir };

struct IncompleteFitOptions {
  GibbsBackend backend = GibbsBackend::kVi;
  int sweeps = 400;
  int burn_in = 200;
  int inner_steps = 10;
  // VI backend: plug in the posterior mean between sweeps (default), or a
  // draw from q.
  bool draw_between_sweeps = false;
  int threads = 1;
  SirOptions sir{.n_candidates = 100, .n_resample = 10};
};

struct IncompleteFitResult {
  int t = 0;
  GibbsBackend backend = GibbsBackend::kVi;
  double kappa_hat = 0.0;
  Eigen::VectorXd theta_hat;

  // VI backend: posterior parameters averaged over kept sweeps.
  double a = 0.0, b = 0.0, beta = 0.0;
  Eigen::VectorXd m;

  // SIR backend: kappa draws pooled over kept sweeps.
  std::vector<double> kappa_draws;

  // Per-sweep point kappa, all sweeps (diagnostic trace).
  std::vector<double> kappa_trace;

  AngleModel point_model() const { return AngleModel(t, kappa_hat, theta_hat); }
};

IncompleteFitResult fit_incomplete(const std::vector<IncompleteRanking>& partials,
                                   const VmfGammaPrior& prior, const IncompleteFitOptions& opts,
                                   std::mt19937_64& rng);

}  // namespace anglerank
