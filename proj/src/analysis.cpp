#include "codedswitch/analysis.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <string>

#include "codedswitch/parallel.hpp"
#include "codedswitch/solvers.hpp"

namespace codedswitch {

namespace {

constexpr std::int64_t kBatch = 10'000;

double to_double(const BigRational& r) { return r.convert_to<double>(); }

ProbabilityEstimate exact(const BigRational& r, EstimateMethod method) {
  return ProbabilityEstimate{to_double(r), method, 0.0};
}

ProbabilityEstimate from_counts(std::int64_t hits, std::int64_t samples) {
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return ProbabilityEstimate{p, EstimateMethod::monte_carlo, std::sqrt(p * (1 - p) / static_cast<double>(samples))};
}

// Runs `trial(rng)` mc.samples times in fixed-size batches, one stream per
// batch, and counts successes. Independent of the thread count.
std::int64_t monte_carlo_hits(const MonteCarloOptions& mc, const std::function<bool(PlacementRng&)>& trial) {
  if (mc.samples < 1) throw SwitchError(ErrorCode::BadParams, "Monte Carlo needs at least one sample");
  const std::int64_t batches = (mc.samples + kBatch - 1) / kBatch;
  std::vector<std::int64_t> hits(batches, 0);
  parallel_for(batches, mc.threads, [&](std::int64_t b) {
    PlacementRng rng = PlacementRng::derive(mc.seed, {static_cast<std::uint64_t>(b)});
    const std::int64_t size = std::min(kBatch, mc.samples - b * kBatch);
    std::int64_t h = 0;
    for (std::int64_t s = 0; s < size; ++s) h += trial(rng) ? 1 : 0;
    hits[b] = h;
  });
  std::int64_t total = 0;
  for (std::int64_t h : hits) total += h;
  return total;
}

std::uint64_t arc_mask(int start, int n, int N) {
  std::uint64_t m = 0;
  for (int t = 0; t < n; ++t) m |= std::uint64_t{1} << ((start + t) % N);
  return m;
}

double multiset_count(int S, int L) {
  double c = 1;
  for (int i = 1; i <= L; ++i) c = c * (S + i - 1) / i;
  return c;
}

std::vector<MuSet> all_subsets(int N, int n) {
  std::vector<MuSet> out;
  std::vector<int> comb(n);
  for (int i = 0; i < n; ++i) comb[i] = i;
  while (true) {
    out.emplace_back(comb);
    int i = n - 1;
    while (i >= 0 && comb[i] == N - n + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
  }
  return out;
}

bool full_throughput(PlacementTag policy, const Instance& inst, const BlockDesign* design) {
  switch (policy) {
    case PlacementTag::cyclic: return solve_cyclic(inst).l_star() == inst.L();
    case PlacementTag::design:
      try {
        return solve_design(inst, *design).l_star() == inst.L();
      } catch (const SwitchError& e) {
        if (e.code() != ErrorCode::ConditionViolated) throw;
        return solve_oracle(inst, OracleOptions{64 * 64}).l_star() == inst.L();
      }
    default: return solve_oracle(inst, OracleOptions{64 * 64}).l_star() == inst.L();
  }
}

}  // namespace

std::string_view to_string(EstimateMethod method) noexcept {
  switch (method) {
    case EstimateMethod::closed_form: return "closed_form";
    case EstimateMethod::exact_enumeration: return "exact_enumeration";
    case EstimateMethod::monte_carlo: return "monte_carlo";
  }
  return "closed_form";
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

UnionModelMatrix UnionModelMatrix::build(int N, int n) {
  if (N < 1 || n < 0 || n > N) throw SwitchError(ErrorCode::BadParams, "union model needs 0 <= n <= N");
  UnionModelMatrix u;
  u.N = N;
  u.n = n;
  const BigInt total = binomial(N, n);
  u.gamma.assign(N + 1, std::vector<BigRational>(N + 1, BigRational(0)));
  for (int i = 0; i <= N; ++i) {
    for (int j = std::max(i, n); j <= std::min(i + n, N); ++j) {
      u.gamma[i][j] = BigRational(binomial(i, i + n - j) * binomial(N - i, j - i), total);
    }
  }
  return u;
}

std::vector<BigRational> UnionModelMatrix::union_distribution(int L) const {
  std::vector<BigRational> dist(N + 1, BigRational(0));
  dist[0] = 1;
  for (int step = 0; step < L; ++step) {
    std::vector<BigRational> next(N + 1, BigRational(0));
    for (int i = 0; i <= N; ++i) {
      if (dist[i] == 0) continue;
      for (int j = i; j <= N; ++j) {
        if (gamma[i][j] != 0) next[j] += dist[i] * gamma[i][j];
      }
    }
    dist = std::move(next);
  }
  return dist;
}

std::vector<std::vector<double>> UnionModelMatrix::to_double() const {
  std::vector<std::vector<double>> out(N + 1, std::vector<double>(N + 1));
  for (int i = 0; i <= N; ++i) {
    for (int j = 0; j <= N; ++j) out[i][j] = codedswitch::to_double(gamma[i][j]);
  }
  return out;
}

ProbabilityEstimate p_cover_uniform(int N, int n, int k, int L) {
  if (k < 1 || L < 1 || n < k || n > N || k * L > N) {
    throw SwitchError(ErrorCode::BadParams, "p_cover_uniform needs 1 <= k <= n <= N and kL <= N");
  }
  const auto dist = UnionModelMatrix::build(N, n).union_distribution(L);
  BigRational below = 0;
  for (int j = 0; j < k * L; ++j) below += dist[j];
  return exact(1 - below, EstimateMethod::closed_form);
}

BigRational p_pair_cyclic_exact(int N, int n, int t, int L) {
  if (N < 1 || n < 1 || n > N || t < 0 || L < 1) {
    throw SwitchError(ErrorCode::BadParams, "p_pair_cyclic needs 1 <= n <= N, t >= 0, L >= 1");
  }
  if (t >= n) return 1;
  BigRational p = 1;
  for (int i = 1; i <= L - 1; ++i) {
    const std::int64_t factor = static_cast<std::int64_t>(N) - static_cast<std::int64_t>(L) * (n - t) + i;
    if (factor <= 0) return 0;
    p *= BigRational(factor, N);
  }
  return p;
}

ProbabilityEstimate p_pair_cyclic(int N, int n, int t, int L) {
  return exact(p_pair_cyclic_exact(N, n, t, L), EstimateMethod::closed_form);
}

BigRational p_pair_design_exact(int b, int L) {
  if (b < 1 || L < 1) throw SwitchError(ErrorCode::BadParams, "p_pair_design needs b >= 1 and L >= 1");
  if (L > b) return 0;
  // C(b, L) b^{-L} sum_j (-1)^j C(L, j) (L - j)^L
  BigInt surjections = 0;
  for (int j = 0; j <= L; ++j) {
    BigInt term = binomial(L, j) * boost::multiprecision::pow(BigInt(L - j), L);
    surjections += (j % 2 == 0) ? term : BigInt(-term);
  }
  return BigRational(binomial(b, L) * surjections, boost::multiprecision::pow(BigInt(b), L));
}

ProbabilityEstimate p_pair_design(int b, int L) {
  return exact(p_pair_design_exact(b, L), EstimateMethod::closed_form);
}

ProbabilityEstimate p_cover_cyclic(int N, int n, int k, int L, const MonteCarloOptions& mc, double enumeration_cap) {
  if (k < 1 || L < 1 || n < k || n > N || k * L > N) {
    throw SwitchError(ErrorCode::BadParams, "p_cover_cyclic needs 1 <= k <= n <= N and kL <= N");
  }
  const int need = k * L;
  if (N <= 64 && std::pow(static_cast<double>(N), L) <= enumeration_cap) {
    // Rotation invariance: fix the first arc at 0 and enumerate the rest.
    std::int64_t hits = 0;
    std::function<void(int, std::uint64_t)> rec = [&](int depth, std::uint64_t covered) {
      if (depth == L) {
        hits += std::popcount(covered) >= need;
        return;
      }
      for (int s = 0; s < N; ++s) rec(depth + 1, covered | arc_mask(s, n, N));
    };
    rec(1, arc_mask(0, n, N));
    BigInt total = boost::multiprecision::pow(BigInt(N), L - 1);
    return exact(BigRational(BigInt(hits), total), EstimateMethod::exact_enumeration);
  }
  const std::int64_t hits = monte_carlo_hits(mc, [&](PlacementRng& rng) {
    std::vector<char> covered(N, 0);
    int count = 0;
    for (int i = 0; i < L; ++i) {
      const int s = rng.below(N);
      for (int t = 0; t < n; ++t) {
        char& c = covered[(s + t) % N];
        count += !c;
        c = 1;
      }
    }
    return count >= need;
  });
  return from_counts(hits, mc.samples);
}

ProbabilityEstimate p_full_throughput_exact(PlacementTag policy, int N, int n, int k, int L, const BlockDesign* design,
                                            const FullThroughputOptions& opts) {
  if (policy == PlacementTag::custom) throw SwitchError(ErrorCode::BadParams, "custom placement has no distribution");
  if (policy == PlacementTag::design) {
    if (design == nullptr) throw SwitchError(ErrorCode::BadParams, "design policy needs a design");
    if (design->blocks.empty()) throw SwitchError(ErrorCode::EmptyDesign, "design has no blocks");
    N = design->N;
    n = design->n;
  }
  if (k < 1 || L < 1 || n < k || n > N) throw SwitchError(ErrorCode::BadParams, "need 1 <= k <= n <= N, L >= 1");
  if (policy == PlacementTag::cyclic && n >= N) throw SwitchError(ErrorCode::BadParams, "cyclic placement needs n < N");
  if (L == 1) return ProbabilityEstimate{1.0, EstimateMethod::closed_form, 0.0};

  std::vector<MuSet> support;
  double support_size;
  switch (policy) {
    case PlacementTag::cyclic: support_size = N; break;
    case PlacementTag::design: support_size = design->b(); break;
    default: support_size = binomial(N, n).convert_to<double>(); break;
  }

  if (multiset_count(static_cast<int>(std::min(support_size, 1e9)), L) <= opts.support_cap) {
    switch (policy) {
      case PlacementTag::cyclic:
        for (int s = 0; s < N; ++s) support.push_back(cyclic_arc(s, n, N));
        break;
      case PlacementTag::design: support = design->blocks; break;
      default: support = all_subsets(N, n); break;
    }
    const int S = static_cast<int>(support.size());
    std::vector<long double> log_fact(L + 1, 0.0L);
    for (int i = 1; i <= L; ++i) log_fact[i] = log_fact[i - 1] + std::log(static_cast<long double>(i));
    const long double log_base = L * std::log(static_cast<long double>(S));

    Instance inst{N, k, n, std::vector<MuSet>(L), policy};
    std::vector<int> pick(L);
    long double total = 0.0L;
    std::function<void(int, int)> rec = [&](int depth, int from) {
      if (depth == L) {
        if (!full_throughput(policy, inst, design)) return;
        long double log_w = log_fact[L] - log_base;
        int run = 1;
        for (int i = 1; i <= L; ++i) {
          if (i < L && pick[i] == pick[i - 1]) {
            ++run;
          } else {
            log_w -= log_fact[run];
            run = 1;
          }
        }
        total += std::exp(log_w);
        return;
      }
      for (int s = from; s < S; ++s) {
        pick[depth] = s;
        inst.packets[depth] = support[s];
        rec(depth + 1, s);
      }
    };
    rec(0, 0);
    return ProbabilityEstimate{static_cast<double>(std::min(total, 1.0L)), EstimateMethod::exact_enumeration, 0.0};
  }

  if (opts.exact_only) {
    throw SwitchError(ErrorCode::TooLarge, "support exceeds the enumeration cap");
  }
  const std::int64_t hits = monte_carlo_hits(opts.mc, [&](PlacementRng& rng) {
    Instance inst;
    switch (policy) {
      case PlacementTag::cyclic: inst = draw_cyclic(N, n, L, rng); break;
      case PlacementTag::design: inst = draw_design(*design, L, rng); break;
      default: inst = draw_uniform(N, n, L, rng); break;
    }
    inst.k = k;
    return full_throughput(policy, inst, design);
  });
  return from_counts(hits, opts.mc.samples);
}

}  // namespace codedswitch
