#pragma once

#include <cstdint>
#include <vector>

#include "codedswitch/model.hpp"

namespace codedswitch {

/// Pairwise intersection cardinalities of an instance's packet sets, plus the
/// s-fold intersection sums used in the inclusion-exclusion form of Hall's condition.
class IntersectionStats {
 public:
  explicit IntersectionStats(const Instance& inst);

  int pairwise(int i, int j) const { return pairwise_.at(i).at(j); }
  int max_pairwise() const noexcept { return max_pairwise_; }

  /// Sum over all s-subsets I of `packets` of |intersection of S_j, j in I|.
  /// `packets` is a bitmask over packet indices.
  std::int64_t phi(int s, std::uint32_t packets) const;

 private:
  std::vector<std::vector<int>> pairwise_;
  int max_pairwise_ = 0;
  std::vector<std::uint32_t> holders_;  // per MU: mask of packets containing it
};

/// |union of S_i| >= k * L.
bool coverage_holds(const Instance& inst);

/// 2(n - k) / (L - 1). Throws DegenerateL for L < 2.
Rational t_max(int n, int k, int L);

/// floor(t_max(n, k, L)).
int t_max_floor(int n, int k, int L);

/// max_{i != j} |S_i ∩ S_j| <= floor(t_max). Throws DegenerateL for L < 2.
bool pairwise_holds(const Instance& inst);

inline constexpr int kHallDefaultCap = 20;

/// Extended Hall condition: every nonempty sub-family of packets covers at
/// least k MUs per member. Exact test for L* = L. Throws TooLarge above `max_L`.
bool hall_full_throughput(const Instance& inst, int max_L = kHallDefaultCap);

/// |union of S_j for j in `packets`| computed directly from the sets.
int union_size(const Instance& inst, std::uint32_t packets);

}  // namespace codedswitch
