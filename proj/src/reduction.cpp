#include <algorithm>
#include <string>

#include "codedswitch/solvers.hpp"

namespace codedswitch {

ReductionOutput reduce_lsp(std::span<const std::vector<int>> sets, int M) {
  if (sets.empty()) throw SwitchError(ErrorCode::BadParams, "set packing instance has no sets");
  if (M < 0) throw SwitchError(ErrorCode::BadParams, "M must be non-negative");
  const std::size_t l = sets.front().size();
  if (l == 0) throw SwitchError(ErrorCode::BadParams, "sets must be nonempty");

  ReductionOutput out;
  for (const auto& s : sets) {
    if (s.size() != l || MuSet(s).size() != l) {
      throw SwitchError(ErrorCode::UnequalCardinality, "every set must hold exactly " + std::to_string(l) +
                                                           " distinct elements");
    }
    out.elements.insert(out.elements.end(), s.begin(), s.end());
  }
  std::sort(out.elements.begin(), out.elements.end());
  out.elements.erase(std::unique(out.elements.begin(), out.elements.end()), out.elements.end());
  const int s_count = static_cast<int>(out.elements.size());
  out.theta = 2 * s_count;

  auto index_of = [&](int a) {
    return static_cast<int>(std::lower_bound(out.elements.begin(), out.elements.end(), a) - out.elements.begin());
  };

  Instance& inst = out.instance;
  inst.N = 2 * s_count + 1;
  inst.k = static_cast<int>(l);
  inst.n = static_cast<int>(l) + 1;
  inst.placement = PlacementTag::custom;
  for (const auto& s : sets) {
    std::vector<int> a{out.theta};
    for (int x : s) a.push_back(index_of(x));
    inst.packets.emplace_back(std::move(a));
  }
  for (const auto& s : sets) {
    std::vector<int> b{out.theta};
    for (int x : s) b.push_back(out.mirror_of(index_of(x)));
    inst.packets.emplace_back(std::move(b));
  }
  out.threshold = 2 * M;
  return out;
}

}  // namespace codedswitch
