#pragma once

// Shared fixtures and brute-force oracles for the test suites. Nothing here
// calls into the solver code paths it is used to check.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

#include "codedswitch/model.hpp"
#include "codedswitch/rng.hpp"

#define CHECK_ERROR(expr, expected_code)                                  \
  do {                                                                    \
    bool thrown_ = false;                                                 \
    try {                                                                 \
      (void)(expr);                                                       \
    } catch (const ::codedswitch::SwitchError& e_) {                      \
      thrown_ = true;                                                     \
      CHECK_MESSAGE(e_.code() == (expected_code), e_.what());             \
    }                                                                     \
    CHECK_MESSAGE(thrown_, "expected " #expected_code " from " #expr);   \
  } while (false)

namespace testing_support {

using namespace codedswitch;

// N=5, n=3: S_1={0,1,2}, S_2={1,3,4}, S_3={2,3,4}.
inline Instance example1(int k) {
  return Instance{5, k, 3, {MuSet{0, 1, 2}, MuSet{1, 3, 4}, MuSet{2, 3, 4}}, PlacementTag::custom};
}

// N=12, n=4: six arcs starting at 11, 1, 3, 5, 7, 9.
inline Instance fig3_instance(int k) {
  Instance inst{12, k, 4, {}, PlacementTag::cyclic};
  for (int s : {11, 1, 3, 5, 7, 9}) inst.packets.push_back(cyclic_arc(s, 4, 12));
  return inst;
}

// S_1={1,2,3}, S_2={1,4,5}, S_3={3,5,6}, k=2, n=3 on 7 points.
inline Instance example6() {
  return Instance{7, 2, 3, {MuSet{1, 2, 3}, MuSet{1, 4, 5}, MuSet{3, 5, 6}}, PlacementTag::design};
}

inline std::vector<std::uint64_t> k_subsets(std::uint64_t set, int k) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = set;; s = (s - 1) & set) {
    if (std::popcount(s) == k) out.push_back(s);
    if (s == 0) break;
  }
  return out;
}

// Plain exhaustive L*: every packet independently skipped or given any
// k-subset of S_i; no pruning, no ordering tricks.
inline int brute_force_lstar(const Instance& inst) {
  std::vector<std::vector<std::uint64_t>> choices;
  for (const auto& s : inst.packets) choices.push_back(k_subsets(s.mask(), inst.k));
  int best = 0;
  std::function<void(int, std::uint64_t, int)> rec = [&](int i, std::uint64_t used, int count) {
    if (i == inst.L()) {
      best = std::max(best, count);
      return;
    }
    rec(i + 1, used, count);
    for (std::uint64_t c : choices[i]) {
      if ((c & used) == 0) rec(i + 1, used | c, count + 1);
    }
  };
  rec(0, 0, 0);
  return best;
}

// Direct Hall check: for every family, count distinct MUs.
inline bool brute_force_hall(const Instance& inst) {
  for (std::uint32_t fam = 1; fam < (1u << inst.L()); ++fam) {
    std::vector<bool> seen(inst.N, false);
    int covered = 0;
    for (int i = 0; i < inst.L(); ++i) {
      if (!(fam >> i & 1u)) continue;
      for (int m : inst.packets[i]) {
        if (!seen[m]) {
          seen[m] = true;
          ++covered;
        }
      }
    }
    if (covered < inst.k * std::popcount(fam)) return false;
  }
  return true;
}

// Largest number of pairwise disjoint sets (l-set packing by enumeration).
inline int brute_force_set_packing(const std::vector<std::vector<int>>& sets) {
  int best = 0;
  const int L = static_cast<int>(sets.size());
  for (std::uint32_t fam = 0; fam < (1u << L); ++fam) {
    std::vector<int> all;
    for (int i = 0; i < L; ++i) {
      if (fam >> i & 1u) all.insert(all.end(), sets[i].begin(), sets[i].end());
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) == all.end()) best = std::max(best, std::popcount(fam));
  }
  return best;
}

inline Instance random_instance(int N, int n, int k, int L, PlacementRng& rng) {
  Instance inst{N, k, n, {}, PlacementTag::custom};
  for (int i = 0; i < L; ++i) {
    std::vector<int> all(N);
    for (int m = 0; m < N; ++m) all[m] = m;
    rng.shuffle(std::span<int>(all));
    inst.packets.emplace_back(std::vector<int>(all.begin(), all.begin() + n));
  }
  return inst;
}

}  // namespace testing_support
