#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "codedswitch/model.hpp"
#include "codedswitch/placement.hpp"

namespace codedswitch {

using BigRational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class EstimateMethod { closed_form, exact_enumeration, monte_carlo };

std::string_view to_string(EstimateMethod method) noexcept;

struct ProbabilityEstimate {
  double value = 0.0;
  EstimateMethod method = EstimateMethod::closed_form;
  double standard_error = 0.0;  // 0 for exact methods
};

/// Markov chain on the size of a union of independent uniform n-subsets of
/// {0..N-1}. gamma[i][j] is the chance that adding one subset takes the union
/// from i to j elements: C(i, i+n-j) C(N-i, j-i) / C(N, n).
struct UnionModelMatrix {
  int N = 0;
  int n = 0;
  std::vector<std::vector<BigRational>> gamma;

  static UnionModelMatrix build(int N, int n);

  /// Row 0 of gamma^L: distribution of the union size after L subsets.
  std::vector<BigRational> union_distribution(int L) const;
  std::vector<std::vector<double>> to_double() const;
};

BigInt binomial(int n, int k);

struct MonteCarloOptions {
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  int threads = 1;
};

/// Pr(|union of L uniform n-subsets| >= kL). Throws BadParams unless kL <= N.
ProbabilityEstimate p_cover_uniform(int N, int n, int k, int L);

/// N^{1-L} prod_{i=1}^{L-1} (N - L(n - t) + i), clamped to 0 when a factor is
/// non-positive and to 1 when t >= n.
ProbabilityEstimate p_pair_cyclic(int N, int n, int t, int L);
BigRational p_pair_cyclic_exact(int N, int n, int t, int L);

/// Chance that L uniform draws from b blocks are all distinct.
ProbabilityEstimate p_pair_design(int b, int L);
BigRational p_pair_design_exact(int b, int L);

inline constexpr double kCoverEnumerationCap = 1e8;

/// Pr(L random arcs of length n cover >= kL points of the N-circle).
/// Exact over all start tuples when N^L <= enumeration_cap, Monte Carlo otherwise.
ProbabilityEstimate p_cover_cyclic(int N, int n, int k, int L, const MonteCarloOptions& mc = {},
                                   double enumeration_cap = kCoverEnumerationCap);

struct FullThroughputOptions {
  /// Largest number of distinct support multisets solved exhaustively.
  double support_cap = 2e6;
  bool exact_only = false;
  MonteCarloOptions mc{100'000, 1, 1};
};

/// Pr(L* = L) under the policy's draw distribution. Exact enumeration over
/// the multisets of the support with multinomial weights when it fits under
/// the cap, Monte Carlo with the policy's optimal solver otherwise. `design`
/// is required for the design policy and supplies N and n.
ProbabilityEstimate p_full_throughput_exact(PlacementTag policy, int N, int n, int k, int L,
                                            const BlockDesign* design = nullptr,
                                            const FullThroughputOptions& opts = {});

}  // namespace codedswitch
