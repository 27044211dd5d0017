#include "codedswitch/model.hpp"

#include <algorithm>
#include <string>

namespace codedswitch {

MuSet::MuSet(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

bool MuSet::contains(int mu) const noexcept {
  return std::binary_search(indices_.begin(), indices_.end(), mu);
}

std::uint64_t MuSet::mask() const {
  std::uint64_t m = 0;
  for (int i : indices_) {
    if (i < 0 || i >= 64) {
      throw SwitchError(ErrorCode::TooLarge, "MU index " + std::to_string(i) + " does not fit a 64-bit mask");
    }
    m |= std::uint64_t{1} << i;
  }
  return m;
}

MuSet MuSet::from_mask(std::uint64_t mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1) out.push_back(i);
  }
  return MuSet(std::move(out));
}

std::size_t MuSet::intersection_size(const MuSet& other) const noexcept {
  std::size_t count = 0;
  auto a = indices_.begin();
  auto b = other.indices_.begin();
  while (a != indices_.end() && b != other.indices_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++count;
      ++a;
      ++b;
    }
  }
  return count;
}

bool MuSet::is_subset_of(const MuSet& other) const noexcept {
  return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(), indices_.end());
}

std::string_view to_string(PlacementTag tag) noexcept {
  switch (tag) {
    case PlacementTag::uniform: return "uniform";
    case PlacementTag::cyclic: return "cyclic";
    case PlacementTag::design: return "design";
    case PlacementTag::custom: return "custom";
  }
  return "custom";
}

PlacementTag placement_from_string(std::string_view name) {
  if (name == "uniform") return PlacementTag::uniform;
  if (name == "cyclic") return PlacementTag::cyclic;
  if (name == "design") return PlacementTag::design;
  if (name == "custom") return PlacementTag::custom;
  throw SwitchError(ErrorCode::ParseError, "unknown placement '" + std::string(name) + "'");
}

MuSet cyclic_arc(int start, int n, int N) {
  std::vector<int> out;
  out.reserve(n);
  for (int t = 0; t < n; ++t) out.push_back(((start + t) % N + N) % N);
  return MuSet(std::move(out));
}

std::optional<int> arc_start(const MuSet& set, int N) {
  const int n = static_cast<int>(set.size());
  if (n == 0 || N <= 0) return std::nullopt;
  if (n == N) return 0;
  std::optional<int> start;
  for (int m : set) {
    if (!set.contains((m + N - 1) % N)) {
      if (start) return std::nullopt;  // two runs
      start = m;
    }
  }
  if (!start || cyclic_arc(*start, n, N) != set) return std::nullopt;
  return start;
}

std::vector<int> storage_order(const Instance& inst, int packet) {
  const MuSet& set = inst.packets.at(packet);
  if (inst.placement == PlacementTag::cyclic) {
    if (auto s = arc_start(set, inst.N)) {
      std::vector<int> order;
      order.reserve(set.size());
      for (std::size_t t = 0; t < set.size(); ++t) order.push_back((*s + static_cast<int>(t)) % inst.N);
      return order;
    }
  }
  return {set.begin(), set.end()};
}

void validate_instance(const Instance& inst) {
  if (!(1 <= inst.k && inst.k <= inst.n && inst.n <= inst.N)) {
    throw SwitchError(ErrorCode::BadParams, "require 1 <= k <= n <= N, got N=" + std::to_string(inst.N) +
                                                " n=" + std::to_string(inst.n) + " k=" + std::to_string(inst.k));
  }
  for (int i = 0; i < inst.L(); ++i) {
    const MuSet& set = inst.packets[i];
    for (int m : set) {
      if (m < 0 || m >= inst.N) {
        throw SwitchError(ErrorCode::IndexOutOfRange,
                          "packet " + std::to_string(i) + " uses MU " + std::to_string(m));
      }
    }
    if (static_cast<int>(set.size()) != inst.n) {
      throw SwitchError(ErrorCode::CardinalityMismatch, "packet " + std::to_string(i) + " has " +
                                                            std::to_string(set.size()) + " MUs, expected " +
                                                            std::to_string(inst.n));
    }
    if (inst.placement == PlacementTag::cyclic && !arc_start(set, inst.N)) {
      throw SwitchError(ErrorCode::NotCyclicArc, "packet " + std::to_string(i) + " is not a cyclic arc");
    }
  }
}

Solution::Solution(std::vector<std::optional<MuSet>> assignments, int k, int N)
    : assignments_(std::move(assignments)) {
  l_star_ = static_cast<int>(std::count_if(assignments_.begin(), assignments_.end(),
                                           [](const auto& a) { return a.has_value(); }));
  rho_ = N > 0 ? Rational(static_cast<std::int64_t>(l_star_) * k, N) : Rational(0);
}

Solution Solution::with_claims(std::vector<std::optional<MuSet>> assignments, int l_star, Rational rho) {
  Solution s;
  s.assignments_ = std::move(assignments);
  s.l_star_ = l_star;
  s.rho_ = rho;
  return s;
}

Solution Solution::empty(const Instance& inst) {
  return Solution(std::vector<std::optional<MuSet>>(inst.packets.size()), inst.k, inst.N);
}

void validate_solution(const Instance& inst, const Solution& sol) {
  const auto& as = sol.assignments();
  if (as.size() != inst.packets.size()) {
    throw SwitchError(ErrorCode::WrongCardinality, "solution has " + std::to_string(as.size()) +
                                                       " entries for " + std::to_string(inst.L()) + " packets");
  }
  std::vector<int> owner(inst.N, -1);
  int served = 0;
  for (int i = 0; i < inst.L(); ++i) {
    if (!as[i]) continue;
    ++served;
    const MuSet& a = *as[i];
    if (!a.is_subset_of(inst.packets[i])) {
      throw SwitchError(ErrorCode::NotSubset, "assignment of packet " + std::to_string(i) + " leaves S_i");
    }
    if (static_cast<int>(a.size()) != inst.k) {
      throw SwitchError(ErrorCode::WrongCardinality, "packet " + std::to_string(i) + " assigned " +
                                                         std::to_string(a.size()) + " MUs, expected k=" +
                                                         std::to_string(inst.k));
    }
    for (int m : a) {
      if (owner[m] >= 0) {
        throw SwitchError(ErrorCode::Overlap, "MU " + std::to_string(m) + " assigned to packets " +
                                                  std::to_string(owner[m]) + " and " + std::to_string(i));
      }
      owner[m] = i;
    }
  }
  const Rational expected(static_cast<std::int64_t>(served) * inst.k, inst.N);
  if (sol.l_star() != served || sol.rho() != expected || sol.rho() < 0 || sol.rho() > 1) {
    throw SwitchError(ErrorCode::RhoMismatch, "claimed l_star=" + std::to_string(sol.l_star()) +
                                                  " but " + std::to_string(served) + " packets are served");
  }
}

double throughput(const Instance& inst, const Solution& sol) {
  validate_solution(inst, sol);
  return boost::rational_cast<double>(sol.rho());
}

BipartiteView BipartiteView::of(const Instance& inst) {
  BipartiteView g;
  g.packet_count = inst.L();
  g.mu_count = inst.N;
  g.packet_adjacency.resize(inst.packets.size());
  for (int i = 0; i < inst.L(); ++i) {
    for (int m : inst.packets[i]) {
      g.edges.emplace_back(i, m);
      g.packet_adjacency[i].push_back(m);
    }
  }
  return g;
}

}  // namespace codedswitch
