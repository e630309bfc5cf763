#include "anglerank/rankings.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "anglerank/errors.hpp"

namespace anglerank {

namespace {

constexpr int kEnumerationGuard = 10;  // 10! = 3,628,800

void check_enumeration_guard(int t, const char* who) {
  if (t > kEnumerationGuard)
    throw SizeError(std::string(who) + ": enumeration limited to t <= 10, got t = " +
                    std::to_string(t));
}

}  // namespace

Ranking::Ranking(std::vector<int> ranks) : ranks_(std::move(ranks)) {
  const int t = static_cast<int>(ranks_.size());
  if (t < 2) throw std::invalid_argument("Ranking: need at least 2 items");
  std::vector<char> seen(t + 1, 0);
  for (int r : ranks_) {
    if (r < 1 || r > t || seen[r])
      throw std::invalid_argument("Ranking: ranks must be a permutation of 1..t");
    seen[r] = 1;
  }
}

Eigen::VectorXd standardize(const Ranking& r) {
  const int t = r.t();
  const double center = (t + 1) / 2.0;
  const double denom = std::sqrt(t * (static_cast<double>(t) * t - 1) / 12.0);
  Eigen::VectorXd y(t);
  for (int i = 0; i < t; ++i) y[i] = (r[i] - center) / denom;
  return y;
}

Eigen::MatrixXd standardize_all(const std::vector<Ranking>& rankings) {
  if (rankings.empty()) throw std::invalid_argument("standardize_all: empty input");
  const int t = rankings.front().t();
  Eigen::MatrixXd Y(rankings.size(), t);
  for (size_t i = 0; i < rankings.size(); ++i) {
    if (rankings[i].t() != t)
      throw std::invalid_argument("standardize_all: inconsistent item counts");
    Y.row(i) = standardize(rankings[i]).transpose();
  }
  return Y;
}

Ranking ranking_from_standardized(const Eigen::VectorXd& y) {
  const int t = static_cast<int>(y.size());
  std::vector<int> idx(t);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return y[a] < y[b]; });
  std::vector<int> ranks(t);
  for (int pos = 0; pos < t; ++pos) ranks[idx[pos]] = pos + 1;
  return Ranking(ranks);
}

void for_each_standardized(int t, const std::function<void(const Eigen::VectorXd&)>& fn) {
  check_enumeration_guard(t, "for_each_standardized");
  if (t < 2) throw std::invalid_argument("for_each_standardized: t >= 2 required");
  const double center = (t + 1) / 2.0;
  const double denom = std::sqrt(t * (static_cast<double>(t) * t - 1) / 12.0);
  std::vector<int> perm(t);
  std::iota(perm.begin(), perm.end(), 1);
  Eigen::VectorXd y(t);
  do {
    for (int i = 0; i < t; ++i) y[i] = (perm[i] - center) / denom;
    fn(y);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

std::vector<Eigen::VectorXd> enumerate_standardized(int t) {
  check_enumeration_guard(t, "enumerate_standardized");
  std::vector<Eigen::VectorXd> out;
  for_each_standardized(t, [&](const Eigen::VectorXd& y) { out.push_back(y); });
  return out;
}

IncompleteRanking::IncompleteRanking(PartialKind kind,
                                     const std::vector<std::optional<int>>& entries)
    : kind_(kind), ranks_(entries.size(), 0), k_(0) {
  const int t = static_cast<int>(entries.size());
  if (t < 2) throw std::invalid_argument("IncompleteRanking: need at least 2 items");
  std::vector<std::pair<int, int>> obs;  // (rank, item)
  for (int i = 0; i < t; ++i) {
    if (entries[i].has_value()) {
      obs.emplace_back(*entries[i], i);
    } else {
      missing_.push_back(i);
    }
  }
  k_ = static_cast<int>(obs.size());
  if (k_ < 1) throw std::invalid_argument("IncompleteRanking: no ranked items");
  std::sort(obs.begin(), obs.end());
  for (int j = 0; j + 1 < k_; ++j)
    if (obs[j].first == obs[j + 1].first)
      throw std::invalid_argument("IncompleteRanking: duplicate ranks");
  if (kind_ == PartialKind::kTopK) {
    for (int j = 0; j < k_; ++j)
      if (obs[j].first != j + 1)
        throw std::invalid_argument("IncompleteRanking: top-k ranks must be exactly 1..k");
  }
  // Re-label to 1..k; for subset rankings only the relative order matters.
  for (int j = 0; j < k_; ++j) {
    ranks_[obs[j].second] = j + 1;
    order_.push_back(obs[j].second);
  }
}

bool is_compatible(const Ranking& complete, const IncompleteRanking& partial) {
  if (complete.t() != partial.t())
    throw std::invalid_argument("is_compatible: item count mismatch");
  const auto& order = partial.ranked_items();
  if (partial.kind() == PartialKind::kTopK) {
    for (int j = 0; j < partial.k(); ++j)
      if (complete[order[j]] != j + 1) return false;
    return true;  // unranked items then necessarily hold ranks > k
  }
  for (size_t j = 0; j + 1 < order.size(); ++j)
    if (complete[order[j]] >= complete[order[j + 1]]) return false;
  return true;
}

std::vector<Ranking> compatible_set(const IncompleteRanking& partial) {
  check_enumeration_guard(partial.t(), "compatible_set");
  const int t = partial.t();
  const int k = partial.k();
  std::vector<Ranking> out;

  if (partial.kind() == PartialKind::kTopK) {
    std::vector<int> missing = partial.missing_items();
    std::sort(missing.begin(), missing.end());
    do {
      std::vector<int> ranks(t, 0);
      for (int j = 0; j < k; ++j) ranks[partial.ranked_items()[j]] = j + 1;
      for (size_t j = 0; j < missing.size(); ++j) ranks[missing[j]] = k + 1 + static_cast<int>(j);
      out.emplace_back(ranks);
    } while (std::next_permutation(missing.begin(), missing.end()));
    return out;
  }

  // Subset: every interleaving of the missing items (in every order) into
  // the ranked preference order.
  const int m = t - k;
  std::vector<int> missing = partial.missing_items();
  std::sort(missing.begin(), missing.end());
  std::vector<int> slots(m);  // positions of missing items in the merged order
  do {
    // first combination: 0,1,...,m-1 mapped into t slots
    std::vector<int> choose(m);
    std::iota(choose.begin(), choose.end(), 0);
    for (;;) {
      std::vector<int> order(t, -1);
      for (int j = 0; j < m; ++j) order[choose[j]] = missing[j];
      int next_ranked = 0;
      for (int pos = 0; pos < t; ++pos)
        if (order[pos] < 0) order[pos] = partial.ranked_items()[next_ranked++];
      std::vector<int> ranks(t);
      for (int pos = 0; pos < t; ++pos) ranks[order[pos]] = pos + 1;
      out.emplace_back(ranks);
      // next combination of m slots out of t
      int j = m - 1;
      while (j >= 0 && choose[j] == t - m + j) --j;
      if (j < 0) break;
      ++choose[j];
      for (int l = j + 1; l < m; ++l) choose[l] = choose[l - 1] + 1;
    }
  } while (std::next_permutation(missing.begin(), missing.end()));
  return out;
}

Ranking sample_compatible(const IncompleteRanking& partial, std::mt19937_64& rng) {
  const int t = partial.t();
  const int k = partial.k();

  if (partial.kind() == PartialKind::kTopK) {
    std::vector<int> ranks(t, 0);
    for (int j = 0; j < k; ++j) ranks[partial.ranked_items()[j]] = j + 1;
    std::vector<int> missing = partial.missing_items();
    for (int j = static_cast<int>(missing.size()) - 1; j > 0; --j) {
      std::uniform_int_distribution<int> pick(0, j);
      std::swap(missing[j], missing[pick(rng)]);
    }
    for (size_t j = 0; j < missing.size(); ++j) ranks[missing[j]] = k + 1 + static_cast<int>(j);
    return Ranking(ranks);
  }

  // Subset: sequential uniform insertion of each missing item keeps every
  // interleaving equally likely (t!/k! outcomes).
  std::vector<int> order = partial.ranked_items();
  order.reserve(t);
  for (int item : partial.missing_items()) {
    std::uniform_int_distribution<int> pos(0, static_cast<int>(order.size()));
    order.insert(order.begin() + pos(rng), item);
  }
  std::vector<int> ranks(t);
  for (int pos = 0; pos < t; ++pos) ranks[order[pos]] = pos + 1;
  return Ranking(ranks);
}

}  // namespace anglerank
