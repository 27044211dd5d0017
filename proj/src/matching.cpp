#include <deque>
#include <limits>
#include <map>

#include "codedswitch/solvers.hpp"

namespace codedswitch {

namespace {

// Hopcroft-Karp on packets (left) x MUs (right).
class HopcroftKarp {
 public:
  HopcroftKarp(const std::vector<std::vector<int>>& adj, int right_count)
      : adj_(adj), match_left_(adj.size(), -1), match_right_(right_count, -1), dist_(adj.size()) {}

  int run() {
    int size = 0;
    while (bfs()) {
      for (std::size_t u = 0; u < adj_.size(); ++u) {
        if (match_left_[u] < 0 && dfs(static_cast<int>(u))) ++size;
      }
    }
    return size;
  }

  int partner_of_left(int u) const { return match_left_[u]; }

 private:
  static constexpr int kInf = std::numeric_limits<int>::max();

  bool bfs() {
    std::deque<int> queue;
    bool reachable_free = false;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      if (match_left_[u] < 0) {
        dist_[u] = 0;
        queue.push_back(static_cast<int>(u));
      } else {
        dist_[u] = kInf;
      }
    }
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : adj_[u]) {
        const int w = match_right_[v];
        if (w < 0) {
          reachable_free = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return reachable_free;
  }

  bool dfs(int u) {
    for (int v : adj_[u]) {
      const int w = match_right_[v];
      if (w < 0 || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    dist_[u] = kInf;
    return false;
  }

  const std::vector<std::vector<int>>& adj_;
  std::vector<int> match_left_;
  std::vector<int> match_right_;
  std::vector<int> dist_;
};

// Edmonds' blossom algorithm, O(V^3).
class Blossom {
 public:
  explicit Blossom(int vertex_count)
      : n_(vertex_count), adj_(vertex_count), match_(vertex_count, -1), parent_(vertex_count),
        base_(vertex_count), used_(vertex_count), in_blossom_(vertex_count) {}

  void add_edge(int a, int b) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }

  void run() {
    for (int v = 0; v < n_; ++v) {
      if (match_[v] >= 0) continue;
      int end = find_path(v);
      while (end >= 0) {
        const int pv = parent_[end];
        const int ppv = match_[pv];
        match_[end] = pv;
        match_[pv] = end;
        end = ppv;
      }
    }
  }

  int mate(int v) const { return match_[v]; }

 private:
  int lca(int a, int b) {
    std::vector<bool> seen(n_, false);
    while (true) {
      a = base_[a];
      seen[a] = true;
      if (match_[a] < 0) break;
      a = parent_[match_[a]];
    }
    while (true) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = in_blossom_[base_[match_[v]]] = true;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  int find_path(int root) {
    std::fill(used_.begin(), used_.end(), false);
    std::fill(parent_.begin(), parent_.end(), -1);
    for (int i = 0; i < n_; ++i) base_[i] = i;
    used_[root] = true;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int to : adj_[v]) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] >= 0 && parent_[match_[to]] >= 0)) {
          const int cur = lca(v, to);
          std::fill(in_blossom_.begin(), in_blossom_.end(), false);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (int i = 0; i < n_; ++i) {
            if (in_blossom_[base_[i]]) {
              base_[i] = cur;
              if (!used_[i]) {
                used_[i] = true;
                queue.push_back(i);
              }
            }
          }
        } else if (parent_[to] < 0) {
          parent_[to] = v;
          if (match_[to] < 0) return to;
          used_[match_[to]] = true;
          queue.push_back(match_[to]);
        }
      }
    }
    return -1;
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_;
  std::vector<int> parent_;
  std::vector<int> base_;
  std::vector<bool> used_;
  std::vector<bool> in_blossom_;
};

}  // namespace

Solution solve_matching_k1(const Instance& inst) {
  check_solver_domain(SolverKind::matching_k1, inst);
  std::vector<std::vector<int>> adj(inst.L());
  for (int i = 0; i < inst.L(); ++i) adj[i].assign(inst.packets[i].begin(), inst.packets[i].end());
  HopcroftKarp hk(adj, inst.N);
  hk.run();
  std::vector<std::optional<MuSet>> out(inst.L());
  for (int i = 0; i < inst.L(); ++i) {
    if (const int m = hk.partner_of_left(i); m >= 0) out[i] = MuSet{m};
  }
  return Solution(std::move(out), inst.k, inst.N);
}

Solution solve_matching_k2n2(const Instance& inst) {
  check_solver_domain(SolverKind::matching_k2n2, inst);
  // Parallel packets on the same MU pair collapse to one edge owned by the lowest index.
  std::map<std::pair<int, int>, int> owner;
  Blossom graph(inst.N);
  for (int i = 0; i < inst.L(); ++i) {
    const auto key = std::make_pair(inst.packets[i][0], inst.packets[i][1]);
    if (owner.emplace(key, i).second) graph.add_edge(key.first, key.second);
  }
  graph.run();
  std::vector<std::optional<MuSet>> out(inst.L());
  for (const auto& [edge, packet] : owner) {
    if (graph.mate(edge.first) == edge.second) out[packet] = MuSet{edge.first, edge.second};
  }
  return Solution(std::move(out), inst.k, inst.N);
}

}  // namespace codedswitch
