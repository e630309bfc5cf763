#include "anglerank/incomplete.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "anglerank/errors.hpp"
#include "anglerank/util.hpp"

namespace anglerank {

Ranking mh_impute_step(const IncompleteRanking& partial, const Ranking& current,
                       const AngleModel& model, int n_inner, std::mt19937_64& rng) {
  if (current.t() != partial.t() || model.t != partial.t())
    throw std::invalid_argument("mh_impute_step: dimension mismatch");
  if (!is_compatible(current, partial))
    throw std::invalid_argument("mh_impute_step: current state incompatible with observation");

  Ranking state = current;
  double score = model.theta.dot(standardize(state));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int step = 0; step < n_inner; ++step) {
    Ranking proposal = sample_compatible(partial, rng);
    const double prop_score = model.theta.dot(standardize(proposal));
    const double delta = model.kappa * (prop_score - score);
    if (delta >= 0.0 || std::log(unif(rng)) < delta) {
      state = std::move(proposal);
      score = prop_score;
    }
  }
  return state;
}

IncompleteFitResult fit_incomplete(const std::vector<IncompleteRanking>& partials,
                                   const VmfGammaPrior& prior, const IncompleteFitOptions& opts,
                                   std::mt19937_64& rng) {
  const int n = static_cast<int>(partials.size());
  if (n < 1) throw std::invalid_argument("fit_incomplete: need at least one observation");
  const int t = partials.front().t();
  for (const auto& p : partials)
    if (p.t() != t) throw std::invalid_argument("fit_incomplete: inconsistent item counts");
  if (opts.sweeps <= opts.burn_in)
    throw std::invalid_argument("fit_incomplete: sweeps must exceed burn_in");

  const std::uint64_t master = rng();
  std::mt19937_64 fit_rng = make_stream(master, 0x5eedf17, 0);

  // Initial imputation: one uniform compatible completion per observation.
  std::vector<Ranking> imputed;
  imputed.reserve(n);
  for (int i = 0; i < n; ++i) {
    auto stream = make_stream(master, 0x1217, static_cast<std::uint64_t>(i));
    imputed.push_back(sample_compatible(partials[i], stream));
  }

  Eigen::MatrixXd Y(n, t);
  auto refresh_matrix = [&] {
    for (int i = 0; i < n; ++i) Y.row(i) = standardize(imputed[i]).transpose();
  };
  refresh_matrix();

  IncompleteFitResult result;
  result.t = t;
  result.backend = opts.backend;

  double kappa_cur = 0.0;
  Eigen::VectorXd theta_cur;

  // Accumulators over kept sweeps.
  double acc_a = 0.0, acc_b = 0.0, acc_beta = 0.0, acc_kappa = 0.0;
  Eigen::VectorXd acc_m = Eigen::VectorXd::Zero(t);
  Eigen::VectorXd acc_theta = Eigen::VectorXd::Zero(t);
  int kept = 0;

  auto refit = [&](int sweep) {
    if (opts.backend == GibbsBackend::kVi) {
      const VmfGammaPosterior post = fit_vi(Y, prior);
      if (opts.draw_between_sweeps) {
        std::gamma_distribution<double> gk(post.a, 1.0 / post.b);
        kappa_cur = gk(fit_rng);
        theta_cur = sample_vmf(post.m, post.beta * kappa_cur, fit_rng);
      } else {
        kappa_cur = post.kappa_mean();
        theta_cur = post.m;
      }
      result.kappa_trace.push_back(post.kappa_mean());
      if (sweep >= opts.burn_in) {
        acc_a += post.a;
        acc_b += post.b;
        acc_beta += post.beta;
        acc_m += post.m;
        acc_kappa += post.kappa_mean();
        acc_theta += post.m;
        ++kept;
      }
    } else {
      const PosteriorSample post = fit_sir(Y, prior, opts.sir, fit_rng);
      std::uniform_int_distribution<int> pick(0, static_cast<int>(post.kappa_draws.size()) - 1);
      const int j = pick(fit_rng);
      kappa_cur = post.kappa_draws[j];
      theta_cur = post.theta_draws[j];
      result.kappa_trace.push_back(post.kappa_mean());
      if (sweep >= opts.burn_in) {
        for (size_t l = 0; l < post.kappa_draws.size(); ++l) {
          result.kappa_draws.push_back(post.kappa_draws[l]);
          acc_kappa += post.kappa_draws[l];
          acc_theta += post.theta_draws[l];
          ++kept;
        }
      }
    }
  };

  refit(-1);  // initial fit on the first imputation, never kept

  for (int sweep = 0; sweep < opts.sweeps; ++sweep) {
    const AngleModel model(t, kappa_cur, theta_cur / theta_cur.norm());
    parallel_for(static_cast<std::size_t>(n), opts.threads, [&](std::size_t i) {
      auto stream = make_stream(master, 0x3337,
                                static_cast<std::uint64_t>(sweep) * n + i);
      imputed[i] = mh_impute_step(partials[i], imputed[i], model, opts.inner_steps, stream);
    });
    // Compatibility is an invariant of the sampler, checked every sweep.
    for (int i = 0; i < n; ++i)
      if (!is_compatible(imputed[i], partials[i]))
        throw std::logic_error("fit_incomplete: imputation broke compatibility");
    refresh_matrix();
    refit(sweep);
  }

  if (kept == 0) throw ConvergenceError("fit_incomplete: no sweeps kept");
  if (opts.backend == GibbsBackend::kVi) {
    result.a = acc_a / kept;
    result.b = acc_b / kept;
    result.beta = acc_beta / kept;
    result.m = acc_m / acc_m.norm();
    result.kappa_hat = acc_kappa / kept;
  } else {
    result.kappa_hat = acc_kappa / kept;
  }
  result.theta_hat = acc_theta / acc_theta.norm();
  return result;
}

}  // namespace anglerank
