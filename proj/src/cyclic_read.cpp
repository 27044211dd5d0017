#include <algorithm>
#include <string>

#include "codedswitch/solvers.hpp"

namespace codedswitch {

namespace {

std::vector<int> arc_starts(const Instance& inst) {
  std::vector<int> starts(inst.L());
  for (int i = 0; i < inst.L(); ++i) {
    const auto s = arc_start(inst.packets[i], inst.N);
    if (!s) throw SwitchError(ErrorCode::WrongParams, "packet " + std::to_string(i) + " is not a cyclic arc");
    starts[i] = *s;
  }
  return starts;
}

std::vector<int> order_from(const std::vector<int>& starts, int anchor, int N) {
  std::vector<int> order(starts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  const int origin = starts[anchor];
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return (starts[a] - origin + N) % N < (starts[b] - origin + N) % N;
  });
  return order;
}

bool single_cyclic_run(const std::vector<bool>& on) {
  const int n = static_cast<int>(on.size());
  int rises = 0;
  for (int p = 0; p < n; ++p) rises += on[p] && !on[(p + n - 1) % n];
  return rises <= 1;
}

}  // namespace

std::vector<int> cyclic_order(const Instance& inst, int anchor) {
  return order_from(arc_starts(inst), anchor, inst.N);
}

Solution solve_cyclic(const Instance& inst) {
  check_solver_domain(SolverKind::cyclic_opt, inst);
  const int L = inst.L();
  const int N = inst.N;
  const int n = inst.n;
  const int k = inst.k;
  const auto starts = arc_starts(inst);

  // Among passes reaching the best count, one whose runs are all consecutive
  // is preferred, so the erasures of every served arc form one cyclic burst.
  std::vector<std::optional<MuSet>> best(L);
  int best_count = 0;
  bool best_runs = true;
  std::vector<bool> taken(N);
  std::vector<int> pick;
  std::vector<bool> used_pos;
  for (int anchor = 0; anchor < L && !(best_count == L && best_runs); ++anchor) {
    std::fill(taken.begin(), taken.end(), false);
    std::vector<std::optional<MuSet>> pass(L);
    int count = 0;
    bool runs = true;
    for (int i : order_from(starts, anchor, N)) {
      pick.clear();
      used_pos.assign(n, false);
      for (int t = 0; t < n && static_cast<int>(pick.size()) < k; ++t) {
        const int m = (starts[i] + t) % N;
        if (taken[m]) continue;
        used_pos[t] = true;
        pick.push_back(m);
      }
      if (static_cast<int>(pick.size()) < k) continue;
      if (!single_cyclic_run(used_pos)) runs = false;
      for (int m : pick) taken[m] = true;
      pass[i] = MuSet(pick);
      ++count;
    }
    if (count > best_count || (count == best_count && runs && !best_runs)) {
      best_count = count;
      best_runs = runs;
      best = std::move(pass);
    }
  }
  return Solution(std::move(best), k, N);
}

}  // namespace codedswitch
