#include "codedswitch/conditions.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace codedswitch {

namespace {

std::int64_t choose(int c, int s) {
  if (s < 0 || s > c) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= s; ++i) r = r * (c - s + i) / i;
  return r;
}

std::uint64_t union_mask(const Instance& inst, std::uint32_t packets) {
  std::uint64_t u = 0;
  for (int i = 0; i < inst.L(); ++i) {
    if (packets >> i & 1u) u |= inst.packets[i].mask();
  }
  return u;
}

}  // namespace

IntersectionStats::IntersectionStats(const Instance& inst) {
  const int L = inst.L();
  pairwise_.assign(L, std::vector<int>(L, 0));
  for (int i = 0; i < L; ++i) {
    pairwise_[i][i] = static_cast<int>(inst.packets[i].size());
    for (int j = i + 1; j < L; ++j) {
      const int c = static_cast<int>(inst.packets[i].intersection_size(inst.packets[j]));
      pairwise_[i][j] = pairwise_[j][i] = c;
      max_pairwise_ = std::max(max_pairwise_, c);
    }
  }
  if (L <= 32) {
    holders_.assign(inst.N, 0);
    for (int i = 0; i < L; ++i) {
      for (int m : inst.packets[i]) holders_.at(m) |= 1u << i;
    }
  }
}

std::int64_t IntersectionStats::phi(int s, std::uint32_t packets) const {
  if (holders_.empty() && !pairwise_.empty()) {
    throw SwitchError(ErrorCode::TooLarge, "phi supports at most 32 packets");
  }
  // Each MU held by c members of the family lies in C(c, s) of the s-fold intersections.
  std::int64_t total = 0;
  for (std::uint32_t h : holders_) total += choose(std::popcount(h & packets), s);
  return total;
}

bool coverage_holds(const Instance& inst) {
  std::vector<bool> covered(inst.N, false);
  int count = 0;
  for (const auto& s : inst.packets) {
    for (int m : s) {
      if (!covered[m]) {
        covered[m] = true;
        ++count;
      }
    }
  }
  return count >= inst.k * inst.L();
}

Rational t_max(int n, int k, int L) {
  if (L < 2) throw SwitchError(ErrorCode::DegenerateL, "t_max needs L >= 2, got L=" + std::to_string(L));
  return Rational(2 * static_cast<std::int64_t>(n - k), L - 1);
}

int t_max_floor(int n, int k, int L) {
  const Rational t = t_max(n, k, L);
  return static_cast<int>(t.numerator() / t.denominator());
}

bool pairwise_holds(const Instance& inst) {
  const int bound = t_max_floor(inst.n, inst.k, inst.L());
  for (int i = 0; i < inst.L(); ++i) {
    for (int j = i + 1; j < inst.L(); ++j) {
      if (static_cast<int>(inst.packets[i].intersection_size(inst.packets[j])) > bound) return false;
    }
  }
  return true;
}

int union_size(const Instance& inst, std::uint32_t packets) {
  return std::popcount(union_mask(inst, packets));
}

bool hall_full_throughput(const Instance& inst, int max_L) {
  const int L = inst.L();
  if (L > max_L || L > 31) {
    throw SwitchError(ErrorCode::TooLarge, "Hall enumeration over 2^" + std::to_string(L) + " families");
  }
  std::vector<std::uint64_t> masks(L);
  for (int i = 0; i < L; ++i) masks[i] = inst.packets[i].mask();

  // Families by increasing size (Gosper's hack), stop at the first violation.
  for (int size = 1; size <= L; ++size) {
    std::uint32_t fam = (1u << size) - 1;
    const std::uint32_t limit = 1u << L;
    while (fam < limit) {
      std::uint64_t u = 0;
      for (std::uint32_t rest = fam; rest != 0; rest &= rest - 1) u |= masks[std::countr_zero(rest)];
      if (std::popcount(u) < inst.k * size) return false;
      const std::uint32_t c = fam & (~fam + 1);
      const std::uint32_t r = fam + c;
      fam = (((r ^ fam) >> 2) / c) | r;
    }
  }
  return true;
}

}  // namespace codedswitch
