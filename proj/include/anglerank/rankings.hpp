#pragma once

// Complete and incomplete rankings, standardization onto the unit sphere,
// and the compatibility machinery for partial data.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace anglerank {

// A ranking of t items: ranks[i] is the rank given to item i, with 1 the
// most preferred.  Always a permutation of {1, ..., t}, t >= 2.
class Ranking {
 public:
  explicit Ranking(std::vector<int> ranks);

  int t() const { return static_cast<int>(ranks_.size()); }
  const std::vector<int>& ranks() const { return ranks_; }
  int operator[](int item) const { return ranks_[item]; }

  bool operator==(const Ranking& other) const { return ranks_ == other.ranks_; }

 private:
  std::vector<int> ranks_;
};

// Centered, unit-norm embedding y = (R - (t+1)/2) / sqrt(t(t^2-1)/12).
Eigen::VectorXd standardize(const Ranking& r);

// Rows are standardized rankings; the layout every fit consumes.
Eigen::MatrixXd standardize_all(const std::vector<Ranking>& rankings);

// Recovers the ranking from its embedding (ranks by component order).
Ranking ranking_from_standardized(const Eigen::VectorXd& y);

// All t! standardized permutations.  Guarded at t <= 10.
std::vector<Eigen::VectorXd> enumerate_standardized(int t);

// Streams standardize(r) for every permutation r of 1..t without
// materializing the full list.  Guarded at t <= 10.
void for_each_standardized(int t, const std::function<void(const Eigen::VectorXd&)>& fn);

enum class PartialKind { kSubset, kTopK };

// An incomplete ranking: k of t items carry ranks, the rest are missing.
// Subset rankings constrain only the relative order of the ranked items
// (observed ranks are re-labeled to 1..k on construction); top-k rankings
// additionally force every unranked item below rank k.
class IncompleteRanking {
 public:
  // entries[i] is the observed rank of item i, or nullopt if unranked.
  IncompleteRanking(PartialKind kind, const std::vector<std::optional<int>>& entries);

  PartialKind kind() const { return kind_; }
  int t() const { return static_cast<int>(ranks_.size()); }
  int k() const { return k_; }
  bool is_ranked(int item) const { return ranks_[item] != 0; }
  // 1..k for ranked items, 0 for missing.
  int rank(int item) const { return ranks_[item]; }
  // Ranked items in preference order (best first).
  const std::vector<int>& ranked_items() const { return order_; }
  const std::vector<int>& missing_items() const { return missing_; }

 private:
  PartialKind kind_;
  std::vector<int> ranks_;
  std::vector<int> order_;
  std::vector<int> missing_;
  int k_;
};

// True iff `complete` preserves every order relation implied by `partial`.
bool is_compatible(const Ranking& complete, const IncompleteRanking& partial);

// The exact compatibility class (t!/k! members for subset, (t-k)! for
// top-k).  Guarded at t <= 10.
std::vector<Ranking> compatible_set(const IncompleteRanking& partial);

// A uniform draw from the compatibility class; never enumerates.
Ranking sample_compatible(const IncompleteRanking& partial, std::mt19937_64& rng);

}  // namespace anglerank
