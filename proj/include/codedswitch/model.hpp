#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "codedswitch/error.hpp"

namespace codedswitch {

using Rational = boost::rational<std::int64_t>;

/// Sorted set of memory-unit indices. Duplicates are collapsed on construction;
/// range checks against N happen in validate_instance.
class MuSet {
 public:
  MuSet() = default;
  MuSet(std::initializer_list<int> indices) : MuSet(std::vector<int>(indices)) {}
  explicit MuSet(std::vector<int> indices);

  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(int mu) const noexcept;
  std::span<const int> indices() const noexcept { return indices_; }
  int operator[](std::size_t i) const noexcept { return indices_[i]; }
  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  /// Bit i set iff i is in the set. Requires all indices < 64.
  std::uint64_t mask() const;
  static MuSet from_mask(std::uint64_t mask);

  std::size_t intersection_size(const MuSet& other) const noexcept;
  bool is_subset_of(const MuSet& other) const noexcept;

  friend bool operator==(const MuSet&, const MuSet&) = default;
  friend auto operator<=>(const MuSet&, const MuSet&) = default;

 private:
  std::vector<int> indices_;
};

enum class PlacementTag { uniform, cyclic, design, custom };

std::string_view to_string(PlacementTag tag) noexcept;
PlacementTag placement_from_string(std::string_view name);

/// One read request: L packets, each stored on n of the N memory units.
struct Instance {
  int N = 0;
  int k = 0;
  int n = 0;
  std::vector<MuSet> packets;
  PlacementTag placement = PlacementTag::custom;

  int L() const noexcept { return static_cast<int>(packets.size()); }
};

/// Returns the arc {s, ..., s+n-1 mod N}.
MuSet cyclic_arc(int start, int n, int N);

/// Start of a cyclic arc: the unique member whose predecessor mod N is absent.
/// A full circle (n == N) starts at 0. Returns nullopt if the set is not an arc.
std::optional<int> arc_start(const MuSet& set, int N);

/// Order in which a packet's n chunks sit on its MUs: clockwise from the arc
/// start for cyclic instances, ascending otherwise.
std::vector<int> storage_order(const Instance& inst, int packet);

/// Throws SwitchError identifying the first violated Instance invariant.
void validate_instance(const Instance& inst);

/// Per-packet read assignment with the derived L* and rho.
class Solution {
 public:
  Solution() = default;

  /// Computes l_star and rho = l_star * k / N from the assignments.
  Solution(std::vector<std::optional<MuSet>> assignments, int k, int N);

  /// Keeps externally supplied l_star/rho (e.g. parsed from JSON) so that
  /// validate_solution can detect inconsistent claims.
  static Solution with_claims(std::vector<std::optional<MuSet>> assignments, int l_star,
                              Rational rho);

  static Solution empty(const Instance& inst);

  const std::vector<std::optional<MuSet>>& assignments() const noexcept { return assignments_; }
  int l_star() const noexcept { return l_star_; }
  Rational rho() const noexcept { return rho_; }
  bool served(int packet) const { return assignments_.at(packet).has_value(); }

 private:
  std::vector<std::optional<MuSet>> assignments_;
  int l_star_ = 0;
  Rational rho_{0};
};

/// Throws NotSubset, WrongCardinality, Overlap or RhoMismatch.
void validate_solution(const Instance& inst, const Solution& sol);

/// l_star * k / N; validates the solution first.
double throughput(const Instance& inst, const Solution& sol);

/// Packet/MU incidence graph: edge (i, m) iff m is in S_i.
struct BipartiteView {
  int packet_count = 0;
  int mu_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> packet_adjacency;

  static BipartiteView of(const Instance& inst);
};

}  // namespace codedswitch
