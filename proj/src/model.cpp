#include "anglerank/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "anglerank/errors.hpp"
#include "anglerank/specialfn.hpp"

namespace anglerank {

namespace {

// Streaming log-sum-exp accumulator (single pass, running maximum).
class LogSumExp {
 public:
  void add(double v) {
    if (v <= max_) {
      sum_ += std::exp(v - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - v) + 1.0;
      max_ = v;
    }
  }
  double value() const { return max_ + std::log(sum_); }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
};

}  // namespace

AngleModel::AngleModel(int t_, double kappa_, Eigen::VectorXd theta_)
    : t(t_), kappa(kappa_), theta(std::move(theta_)) {
  if (t < 3) throw std::domain_error("AngleModel: t >= 3 required");
  if (!(kappa >= 0.0)) throw std::domain_error("AngleModel: kappa >= 0 required");
  if (theta.size() != t) throw std::invalid_argument("AngleModel: theta size != t");
  if (std::abs(theta.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("AngleModel: theta must have unit norm");
}

double log_norm_const_approx(int t, double kappa) {
  if (t < 3) throw std::domain_error("log_norm_const_approx: t >= 3 required");
  if (!(kappa >= 0.0)) throw std::domain_error("log_norm_const_approx: kappa >= 0 required");
  if (kappa == 0.0) return -log_gamma(t + 1.0);
  const double nu = (t - 3) / 2.0;
  return nu * std::log(0.5 * kappa) - log_gamma(t + 1.0) - log_bessel_i(nu, kappa) -
         log_gamma((t - 1) / 2.0);
}

double log_norm_const_exact(int t, double kappa, const Eigen::VectorXd& theta) {
  if (theta.size() != t) throw std::invalid_argument("log_norm_const_exact: theta size != t");
  LogSumExp lse;
  for_each_standardized(t, [&](const Eigen::VectorXd& y) { lse.add(kappa * theta.dot(y)); });
  return -lse.value();
}

double log_density(const AngleModel& model, const Eigen::VectorXd& y) {
  if (y.size() != model.t) throw std::invalid_argument("log_density: dimension mismatch");
  return log_norm_const_approx(model.t, model.kappa) + model.kappa * model.theta.dot(y);
}

std::vector<Ranking> sample(const AngleModel& model, int n, std::mt19937_64& rng,
                            int burn_in, int thin) {
  if (n < 1) throw std::invalid_argument("sample: n >= 1 required");
  const int t = model.t;
  if (burn_in < 0) burn_in = 1000 * t;
  if (thin < 1) thin = t;

  std::vector<int> current(t);
  std::iota(current.begin(), current.end(), 1);
  for (int j = t - 1; j > 0; --j) {
    std::uniform_int_distribution<int> pick(0, j);
    std::swap(current[j], current[pick(rng)]);
  }

  const double center = (t + 1) / 2.0;
  const double denom = std::sqrt(t * (static_cast<double>(t) * t - 1) / 12.0);
  auto embed = [&](int rank) { return (rank - center) / denom; };

  std::uniform_int_distribution<int> pos(0, t - 1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  std::vector<Ranking> out;
  out.reserve(n);
  long long steps = 0;
  while (static_cast<int>(out.size()) < n) {
    int i = pos(rng), j = pos(rng);
    while (j == i) j = pos(rng);
    // Swapping ranks at positions i, j changes theta'y by
    // (theta_i - theta_j) (y_j - y_i).
    const double delta =
        model.kappa * (model.theta[i] - model.theta[j]) * (embed(current[j]) - embed(current[i]));
    if (delta >= 0.0 || std::log(unif(rng)) < delta) std::swap(current[i], current[j]);
    ++steps;
    if (steps > burn_in && (steps - burn_in) % thin == 0) out.emplace_back(current);
  }
  return out;
}

KldResult kld_exact(const AngleModel& p, const AngleModel& q) {
  if (p.t != q.t) throw std::invalid_argument("kld_exact: models disagree on t");
  // Pass 1: exact normalizers of both models over the permutation set.
  LogSumExp zp, zq;
  for_each_standardized(p.t, [&](const Eigen::VectorXd& y) {
    zp.add(p.kappa * p.theta.dot(y));
    zq.add(q.kappa * q.theta.dot(y));
  });
  const double lzp = zp.value(), lzq = zq.value();
  double kl = 0.0;
  for_each_standardized(p.t, [&](const Eigen::VectorXd& y) {
    const double lp = p.kappa * p.theta.dot(y) - lzp;
    const double lq = q.kappa * q.theta.dot(y) - lzq;
    kl += std::exp(lp) * (lp - lq);
  });
  return {std::max(kl, 0.0), false};
}

KldResult kld_monte_carlo(const AngleModel& p, const AngleModel& q, int n,
                          std::mt19937_64& rng) {
  if (p.t != q.t) throw std::invalid_argument("kld_monte_carlo: models disagree on t");
  if (n < 1) throw std::invalid_argument("kld_monte_carlo: n >= 1 required");
  const double lcp = log_norm_const_approx(p.t, p.kappa);
  const double lcq = log_norm_const_approx(q.t, q.kappa);
  double acc = 0.0;
  for (const Ranking& r : sample(p, n, rng)) {
    const Eigen::VectorXd y = standardize(r);
    acc += (lcp + p.kappa * p.theta.dot(y)) - (lcq + q.kappa * q.theta.dot(y));
  }
  const double est = acc / n;
  if (est < 0.0) return {0.0, true};
  return {est, false};
}

NcErrorTable nc_error_table(int min_t, int max_t, const std::vector<double>& kappas) {
  if (min_t < 3) throw std::domain_error("nc_error_table: t >= 3 required");
  if (max_t > 10) throw SizeError("nc_error_table: exact reference limited to t <= 10");
  NcErrorTable table;
  for (int t = min_t; t <= max_t; ++t) table.ts.push_back(t);
  table.kappas = kappas;
  table.percent_error.resize(kappas.size(), table.ts.size());
  for (size_t col = 0; col < table.ts.size(); ++col) {
    const int t = table.ts[col];
    std::vector<int> identity(t);
    std::iota(identity.begin(), identity.end(), 1);
    const Eigen::VectorXd theta = standardize(Ranking(identity));
    for (size_t row = 0; row < kappas.size(); ++row) {
      const double approx = log_norm_const_approx(t, kappas[row]);
      const double exact = log_norm_const_exact(t, kappas[row], theta);
      table.percent_error(row, col) = std::abs(approx - exact) / std::abs(exact) * 100.0;
    }
  }
  return table;
}

}  // namespace anglerank
