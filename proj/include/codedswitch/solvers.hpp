#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "codedswitch/model.hpp"
#include "codedswitch/placement.hpp"
#include "codedswitch/rng.hpp"

namespace codedswitch {

enum class SolverKind { oracle, greedy, matching_k1, matching_k2n2, cyclic_opt, design_opt };

std::string_view to_string(SolverKind kind) noexcept;
/// Accepts both the enum names and the short CLI names (k1, k2n2, cyclic, design).
SolverKind solver_from_string(std::string_view name);

/// Throws WrongParams unless the instance lies in the solver's domain.
void check_solver_domain(SolverKind kind, const Instance& inst);

struct OracleOptions {
  /// Largest admissible L*n.
  int max_state_bits = 24;
};

/// Exhaustive branch-and-bound: packets in index order, each either assigned
/// a k-subset of its free MUs (lexicographic) or skipped (explored last).
Solution solve_oracle(const Instance& inst, OracleOptions opts = {});

/// Visits packets in random order and gives each the k lowest free MUs of S_i.
Solution solve_greedy(const Instance& inst, PlacementRng& rng);

/// k = 1: maximum bipartite matching between packets and MUs (Hopcroft-Karp).
Solution solve_matching_k1(const Instance& inst);

/// k = n = 2: maximum matching in the MU graph with one edge per packet (Edmonds).
Solution solve_matching_k2n2(const Instance& inst);

/// Packet indices sorted by arc start clockwise from `anchor`'s start; ties by index.
std::vector<int> cyclic_order(const Instance& inst, int anchor);

/// Optimal read for cyclic placement: one greedy pass per anchor packet,
/// each served packet taking its first k surviving MUs clockwise; best pass wins.
Solution solve_cyclic(const Instance& inst);

/// Orientation of an undirected multigraph with |in - out| <= 1 at every vertex.
struct OrientedBalanceGraph {
  std::vector<int> vertices;                 // sorted, each incident to >= 1 edge
  std::vector<std::pair<int, int>> arcs;     // arcs[e] orients input edge e as (from, to)

  int in_degree(int v) const;
  int out_degree(int v) const;
};

/// Euler-circuit orientation: odd-degree vertices are joined to an auxiliary
/// vertex, every component is walked once, auxiliary edges are dropped.
OrientedBalanceGraph balanced_orientation(std::span<const std::pair<int, int>> edges);

/// Optimal read for design placement. Packets on repeated blocks beyond the
/// first occurrence stay unserved (falls back to solve_oracle when k <= n/2).
/// Throws BlockNotInDesign or ConditionViolated.
Solution solve_design(const Instance& inst, const BlockDesign& design);

/// Dispatch by kind. `design` is required for design_opt, `rng` for greedy.
Solution solve(SolverKind kind, const Instance& inst, const BlockDesign* design = nullptr,
               PlacementRng* rng = nullptr, OracleOptions opts = {});

/// l-set packing instance mapped to an nkMTP instance with k = l, n = l + 1:
/// packets A~_1..A~_L then B~_1..B~_L; MU j < s is element a_j, MU s + j is
/// its mirror b_j, MU 2s is theta.
struct ReductionOutput {
  Instance instance;
  int threshold = 0;
  std::vector<int> elements;  // a_j labels, ascending
  int theta = 0;

  int mirror_of(int a_index) const { return static_cast<int>(elements.size()) + a_index; }
};

/// Throws UnequalCardinality if the sets differ in size (or repeat elements).
ReductionOutput reduce_lsp(std::span<const std::vector<int>> sets, int M);

}  // namespace codedswitch
