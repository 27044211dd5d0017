#include <algorithm>
#include <map>
#include <string>

#include "codedswitch/conditions.hpp"
#include "codedswitch/solvers.hpp"

namespace codedswitch {

int OrientedBalanceGraph::in_degree(int v) const {
  return static_cast<int>(std::count_if(arcs.begin(), arcs.end(), [v](const auto& a) { return a.second == v; }));
}

int OrientedBalanceGraph::out_degree(int v) const {
  return static_cast<int>(std::count_if(arcs.begin(), arcs.end(), [v](const auto& a) { return a.first == v; }));
}

OrientedBalanceGraph balanced_orientation(std::span<const std::pair<int, int>> edges) {
  OrientedBalanceGraph out;
  for (const auto& [a, b] : edges) {
    out.vertices.push_back(a);
    out.vertices.push_back(b);
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
  const int V = static_cast<int>(out.vertices.size());
  auto id = [&](int v) {
    return static_cast<int>(std::lower_bound(out.vertices.begin(), out.vertices.end(), v) - out.vertices.begin());
  };

  // Edge list over compact ids; vertex V is the auxiliary vertex.
  std::vector<std::pair<int, int>> ends;
  ends.reserve(edges.size() + V);
  for (const auto& [a, b] : edges) ends.emplace_back(id(a), id(b));
  std::vector<std::vector<int>> adj(V + 1);
  for (std::size_t e = 0; e < ends.size(); ++e) {
    adj[ends[e].first].push_back(static_cast<int>(e));
    adj[ends[e].second].push_back(static_cast<int>(e));
  }
  for (int v = 0; v < V; ++v) {
    if (adj[v].size() % 2 == 1) {
      const int e = static_cast<int>(ends.size());
      ends.emplace_back(v, V);
      adj[v].push_back(e);
      adj[V].push_back(e);
    }
  }

  // Hierholzer walk; every edge is oriented in the direction it is first walked.
  // All degrees are even, so each maximal walk closes on itself.
  std::vector<bool> used(ends.size(), false);
  std::vector<std::pair<int, int>> directed(ends.size());
  std::vector<std::size_t> next(V + 1, 0);
  std::vector<int> stack;
  for (int s = 0; s <= V; ++s) {
    stack.assign(1, s);
    while (!stack.empty()) {
      const int v = stack.back();
      while (next[v] < adj[v].size() && used[adj[v][next[v]]]) ++next[v];
      if (next[v] == adj[v].size()) {
        stack.pop_back();
        continue;
      }
      const int e = adj[v][next[v]];
      used[e] = true;
      const int w = ends[e].first == v ? ends[e].second : ends[e].first;
      directed[e] = {v, w};
      stack.push_back(w);
    }
  }

  out.arcs.reserve(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out.arcs.emplace_back(out.vertices[directed[e].first], out.vertices[directed[e].second]);
  }
  return out;
}

Solution solve_design(const Instance& inst, const BlockDesign& design) {
  check_solver_domain(SolverKind::design_opt, inst);
  const int L = inst.L();
  const int k = inst.k;
  for (int i = 0; i < L; ++i) {
    if (design.find(inst.packets[i]) < 0) {
      throw SwitchError(ErrorCode::BlockNotInDesign, "packet " + std::to_string(i) + " is not a design block");
    }
  }

  // First occurrence of every block.
  std::vector<int> reps;
  for (int i = 0; i < L; ++i) {
    const bool seen = std::any_of(reps.begin(), reps.end(), [&](int r) { return inst.packets[r] == inst.packets[i]; });
    if (!seen) reps.push_back(i);
  }
  if (static_cast<int>(reps.size()) < L && 2 * k <= inst.n) {
    // A repeated block may still serve two packets; no structural shortcut applies.
    return solve_oracle(inst, OracleOptions{64 * 64});
  }

  const int P = static_cast<int>(reps.size());
  if (P >= 2) {
    const int bound = t_max_floor(inst.n, k, P);
    for (int a = 0; a < P; ++a) {
      for (int b = a + 1; b < P; ++b) {
        if (static_cast<int>(inst.packets[reps[a]].intersection_size(inst.packets[reps[b]])) > bound) {
          throw SwitchError(ErrorCode::ConditionViolated,
                            "distinct blocks meet in more than floor(t_max) = " + std::to_string(bound) + " MUs");
        }
      }
    }
  }

  // Holders of each MU among the distinct blocks.
  std::vector<std::vector<int>> holders(inst.N);
  for (int a = 0; a < P; ++a) {
    for (int m : inst.packets[reps[a]]) holders[m].push_back(a);
  }
  std::vector<std::vector<int>> pool(P);
  std::map<std::pair<int, int>, std::vector<int>> shared;  // exclusive to exactly two blocks, ascending
  for (int m = 0; m < inst.N; ++m) {
    if (holders[m].size() == 1) {
      pool[holders[m][0]].push_back(m);
    } else if (holders[m].size() == 2) {
      shared[{holders[m][0], holders[m][1]}].push_back(m);
    }
  }

  std::vector<std::pair<int, int>> odd_edges;
  for (const auto& [pair, mus] : shared) {
    if (mus.size() % 2 == 1) odd_edges.push_back(pair);
  }
  const OrientedBalanceGraph orient = balanced_orientation(odd_edges);
  std::map<std::pair<int, int>, int> head;  // pair -> block the odd edge points to
  for (std::size_t e = 0; e < odd_edges.size(); ++e) head[odd_edges[e]] = orient.arcs[e].second;

  // Lower block takes a prefix of the shared MUs, higher block the suffix.
  for (const auto& [pair, mus] : shared) {
    const auto size = mus.size();
    std::size_t lower_share = size / 2;
    if (size % 2 == 1 && head.at(pair) == pair.first) lower_share = size / 2 + 1;
    pool[pair.first].insert(pool[pair.first].end(), mus.begin(), mus.begin() + lower_share);
    pool[pair.second].insert(pool[pair.second].end(), mus.begin() + lower_share, mus.end());
  }

  std::vector<std::optional<MuSet>> out(L);
  for (int a = 0; a < P; ++a) {
    std::sort(pool[a].begin(), pool[a].end());
    if (static_cast<int>(pool[a].size()) < k) {
      throw SwitchError(ErrorCode::ConditionViolated, "block of packet " + std::to_string(reps[a]) + " received only " +
                                                          std::to_string(pool[a].size()) + " MUs");
    }
    out[reps[a]] = MuSet(std::vector<int>(pool[a].begin(), pool[a].begin() + k));
  }
  return Solution(std::move(out), k, inst.N);
}

}  // namespace codedswitch
