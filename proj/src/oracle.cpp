#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

#include "codedswitch/solvers.hpp"

namespace codedswitch {

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const Instance& inst) : inst_(inst), L_(inst.L()), k_(inst.k) {
    masks_.reserve(L_);
    for (const auto& s : inst.packets) masks_.push_back(s.mask());
    suffix_union_.assign(L_ + 1, 0);
    for (int i = L_ - 1; i >= 0; --i) suffix_union_[i] = suffix_union_[i + 1] | masks_[i];
    current_.assign(L_, 0);
    best_.assign(L_, 0);
  }

  void run() { descend(0, 0, 0); }

  Solution solution() const {
    std::vector<std::optional<MuSet>> out(L_);
    for (int i = 0; i < L_; ++i) {
      if (best_[i] != 0) out[i] = MuSet::from_mask(best_[i]);
    }
    return Solution(std::move(out), inst_.k, inst_.N);
  }

 private:
  // Packets still to decide, and free MUs they could use, both cap the gain.
  int bound(int i, std::uint64_t used) const {
    const int by_packets = L_ - i;
    const int by_mus = std::popcount(suffix_union_[i] & ~used) / k_;
    return std::min(by_packets, by_mus);
  }

  void descend(int i, std::uint64_t used, int count) {
    if (best_count_ == L_) return;
    if (i == L_) {
      if (count > best_count_) {
        best_count_ = count;
        best_ = current_;
      }
      return;
    }
    if (count + bound(i, used) <= best_count_) return;

    const std::uint64_t avail = masks_[i] & ~used;
    if (std::popcount(avail) >= k_) {
      std::vector<int> free_mus;
      for (std::uint64_t rest = avail; rest != 0; rest &= rest - 1) free_mus.push_back(std::countr_zero(rest));
      std::vector<int> comb(k_);
      for (int j = 0; j < k_; ++j) comb[j] = j;
      const int m = static_cast<int>(free_mus.size());
      while (true) {
        std::uint64_t pick = 0;
        for (int c : comb) pick |= std::uint64_t{1} << free_mus[c];
        current_[i] = pick;
        descend(i + 1, used | pick, count + 1);
        current_[i] = 0;
        if (best_count_ == L_) return;

        int j = k_ - 1;
        while (j >= 0 && comb[j] == m - k_ + j) --j;
        if (j < 0) break;
        ++comb[j];
        for (int t = j + 1; t < k_; ++t) comb[t] = comb[t - 1] + 1;
      }
    }
    descend(i + 1, used, count);
  }

  const Instance& inst_;
  int L_;
  int k_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::uint64_t> suffix_union_;
  std::vector<std::uint64_t> current_;
  std::vector<std::uint64_t> best_;
  int best_count_ = 0;
};

}  // namespace

std::string_view to_string(SolverKind kind) noexcept {
  switch (kind) {
    case SolverKind::oracle: return "oracle";
    case SolverKind::greedy: return "greedy";
    case SolverKind::matching_k1: return "matching_k1";
    case SolverKind::matching_k2n2: return "matching_k2n2";
    case SolverKind::cyclic_opt: return "cyclic_opt";
    case SolverKind::design_opt: return "design_opt";
  }
  return "oracle";
}

SolverKind solver_from_string(std::string_view name) {
  if (name == "oracle") return SolverKind::oracle;
  if (name == "greedy") return SolverKind::greedy;
  if (name == "k1" || name == "matching_k1") return SolverKind::matching_k1;
  if (name == "k2n2" || name == "matching_k2n2") return SolverKind::matching_k2n2;
  if (name == "cyclic" || name == "cyclic_opt") return SolverKind::cyclic_opt;
  if (name == "design" || name == "design_opt") return SolverKind::design_opt;
  throw SwitchError(ErrorCode::ParseError, "unknown solver '" + std::string(name) + "'");
}

void check_solver_domain(SolverKind kind, const Instance& inst) {
  switch (kind) {
    case SolverKind::matching_k1:
      if (inst.k != 1) throw SwitchError(ErrorCode::WrongParams, "matching_k1 requires k = 1");
      break;
    case SolverKind::matching_k2n2:
      if (inst.k != 2 || inst.n != 2) throw SwitchError(ErrorCode::WrongParams, "matching_k2n2 requires k = n = 2");
      break;
    case SolverKind::cyclic_opt:
      if (inst.placement != PlacementTag::cyclic) {
        throw SwitchError(ErrorCode::WrongParams, "cyclic_opt requires a cyclic instance");
      }
      break;
    case SolverKind::design_opt:
      if (inst.placement != PlacementTag::design) {
        throw SwitchError(ErrorCode::WrongParams, "design_opt requires a design instance");
      }
      break;
    case SolverKind::oracle:
    case SolverKind::greedy:
      break;
  }
}

Solution solve_oracle(const Instance& inst, OracleOptions opts) {
  if (inst.L() * inst.n > opts.max_state_bits) {
    throw SwitchError(ErrorCode::TooLarge, "L*n = " + std::to_string(inst.L() * inst.n) + " exceeds cap " +
                                               std::to_string(opts.max_state_bits));
  }
  if (inst.N > 64) throw SwitchError(ErrorCode::TooLarge, "exhaustive search supports N <= 64");
  BranchAndBound search(inst);
  search.run();
  return search.solution();
}

Solution solve_greedy(const Instance& inst, PlacementRng& rng) {
  std::vector<int> order(inst.L());
  for (int i = 0; i < inst.L(); ++i) order[i] = i;
  rng.shuffle(std::span<int>(order));

  std::vector<bool> taken(inst.N, false);
  std::vector<std::optional<MuSet>> out(inst.L());
  for (int i : order) {
    std::vector<int> pick;
    for (int m : inst.packets[i]) {
      if (!taken[m]) pick.push_back(m);
      if (static_cast<int>(pick.size()) == inst.k) break;
    }
    if (static_cast<int>(pick.size()) < inst.k) continue;
    for (int m : pick) taken[m] = true;
    out[i] = MuSet(std::move(pick));
  }
  return Solution(std::move(out), inst.k, inst.N);
}

Solution solve(SolverKind kind, const Instance& inst, const BlockDesign* design, PlacementRng* rng,
               OracleOptions opts) {
  check_solver_domain(kind, inst);
  switch (kind) {
    case SolverKind::oracle: return solve_oracle(inst, opts);
    case SolverKind::greedy: {
      if (rng == nullptr) throw SwitchError(ErrorCode::WrongParams, "greedy needs a random stream");
      return solve_greedy(inst, *rng);
    }
    case SolverKind::matching_k1: return solve_matching_k1(inst);
    case SolverKind::matching_k2n2: return solve_matching_k2n2(inst);
    case SolverKind::cyclic_opt: return solve_cyclic(inst);
    case SolverKind::design_opt: {
      if (design == nullptr) throw SwitchError(ErrorCode::WrongParams, "design_opt needs the block design");
      return solve_design(inst, *design);
    }
  }
  throw SwitchError(ErrorCode::WrongParams, "unknown solver");
}

}  // namespace codedswitch
