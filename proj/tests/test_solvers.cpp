#include <doctest.h>

#include <chrono>
#include <functional>
#include <set>

#include "codedswitch/conditions.hpp"
#include "codedswitch/placement.hpp"
#include "codedswitch/solvers.hpp"
#include "support.hpp"

using namespace codedswitch;
using namespace testing_support;

namespace {

BlockDesign example6_design() {
  return BlockDesign{7,
                     3,
                     2,
                     {MuSet{1, 2, 3}, MuSet{1, 4, 5}, MuSet{0, 1, 6}, MuSet{2, 4, 6}, MuSet{0, 2, 5}, MuSet{0, 3, 4},
                      MuSet{3, 5, 6}},
                     DesignSource::file};
}

// Positions (within the arc) of the MUs assigned to packet i are one cyclic run.
bool assigned_run_is_consecutive(const Instance& inst, const Solution& sol, int i) {
  const auto order = storage_order(inst, i);
  const int n = inst.n;
  std::vector<bool> on(n);
  for (int p = 0; p < n; ++p) on[p] = sol.assignments()[i]->contains(order[p]);
  int rises = 0;
  for (int p = 0; p < n; ++p) rises += on[p] && !on[(p + n - 1) % n];
  return rises == 1 || (rises == 0 && inst.k == n);
}

void for_each_start_tuple(int N, int L, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> starts(L, 0);
  while (true) {
    fn(starts);
    int i = L - 1;
    while (i >= 0 && starts[i] == N - 1) starts[i--] = 0;
    if (i < 0) return;
    ++starts[i];
  }
}

Instance cyclic_from_starts(int N, int n, int k, const std::vector<int>& starts) {
  Instance inst{N, k, n, {}, PlacementTag::cyclic};
  for (int s : starts) inst.packets.push_back(cyclic_arc(s, n, N));
  return inst;
}

}  // namespace

TEST_CASE("oracle on example 1") {
  CHECK(solve_oracle(example1(3)).l_star() == 1);
  CHECK(solve_oracle(example1(2)).l_star() == 2);
  CHECK(solve_oracle(example1(1)).l_star() == 3);
  for (int k = 1; k <= 3; ++k) CHECK_NOTHROW(validate_solution(example1(k), solve_oracle(example1(k))));
}

TEST_CASE("oracle matches brute force") {
  PlacementRng rng(21);
  for (int trial = 0; trial < 1500; ++trial) {
    const int N = 3 + rng.below(7);
    const int n = 1 + rng.below(N);
    const int k = 1 + rng.below(n);
    const int L = 1 + rng.below(std::max(1, std::min(6, 24 / n)));
    const Instance inst = random_instance(N, n, k, L, rng);
    const Solution sol = solve_oracle(inst);
    CHECK_NOTHROW(validate_solution(inst, sol));
    REQUIRE(sol.l_star() == brute_force_lstar(inst));
  }
  Instance big{30, 2, 5, {}, PlacementTag::custom};
  for (int i = 0; i < 5; ++i) big.packets.push_back(MuSet{i, i + 5, i + 10, i + 15, i + 20});
  CHECK_ERROR(solve_oracle(big), ErrorCode::TooLarge);
  CHECK(solve_oracle(big, OracleOptions{25}).l_star() == 5);
}

TEST_CASE("greedy") {
  PlacementRng rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    CHECK(solve_greedy(example1(1), rng).l_star() == 3);
    CHECK(solve_greedy(example1(3), rng).l_star() == 1);
  }
  const Instance disjoint{9, 2, 3, {MuSet{0, 1, 2}, MuSet{3, 4, 5}, MuSet{6, 7, 8}}, PlacementTag::custom};
  CHECK(solve_greedy(disjoint, rng).l_star() == 3);

  // Lowest-index picks strand the second packet in either order.
  const Instance witness{4, 2, 3, {MuSet{0, 1, 2}, MuSet{0, 1, 3}}, PlacementTag::custom};
  CHECK(solve_oracle(witness).l_star() == 2);
  for (int trial = 0; trial < 20; ++trial) CHECK(solve_greedy(witness, rng).l_star() == 1);

  for (int trial = 0; trial < 1000; ++trial) {
    const int N = 4 + rng.below(8);
    const int n = 1 + rng.below(std::min(N, 6));
    const int k = 1 + rng.below(n);
    const int L = 1 + rng.below(std::max(1, std::min(6, 24 / n)));
    const Instance inst = random_instance(N, n, k, L, rng);
    const Solution g = solve_greedy(inst, rng);
    CHECK_NOTHROW(validate_solution(inst, g));
    REQUIRE(g.l_star() <= solve_oracle(inst).l_star());
  }
}

TEST_CASE("matching solvers") {
  CHECK(solve_matching_k1(example1(1)).l_star() == 3);
  const Instance same{6, 1, 3, {MuSet{0, 1, 2}, MuSet{0, 1, 2}, MuSet{0, 1, 2}, MuSet{0, 1, 2}, MuSet{0, 1, 2}},
                      PlacementTag::custom};
  CHECK(solve_matching_k1(same).l_star() == 3);
  CHECK_ERROR(solve_matching_k1(example1(2)), ErrorCode::WrongParams);

  const Instance path{4, 2, 2, {MuSet{0, 1}, MuSet{1, 2}, MuSet{2, 3}}, PlacementTag::custom};
  CHECK(solve_matching_k2n2(path).l_star() == 2);
  const Instance two{4, 2, 2, {MuSet{0, 1}, MuSet{2, 3}}, PlacementTag::custom};
  CHECK(solve_matching_k2n2(two).l_star() == 2);
  const Instance copies{4, 2, 2, {MuSet{0, 1}, MuSet{0, 1}, MuSet{0, 1}}, PlacementTag::custom};
  CHECK(solve_matching_k2n2(copies).l_star() == 1);
  CHECK_ERROR(solve_matching_k2n2(example1(2)), ErrorCode::WrongParams);

  // Odd cycle plus pendant: needs a blossom to find the perfect matching.
  const Instance blossom{6, 2, 2, {MuSet{0, 1}, MuSet{1, 2}, MuSet{0, 2}, MuSet{2, 3}, MuSet{3, 4}, MuSet{4, 5}},
                         PlacementTag::custom};
  CHECK(solve_matching_k2n2(blossom).l_star() == 3);

  PlacementRng rng(23);
  for (int trial = 0; trial < 10000; ++trial) {
    const Instance k1 = random_instance(12, 1 + rng.below(4), 1, 1 + rng.below(6), rng);
    const Solution a = solve_matching_k1(k1);
    CHECK_NOTHROW(validate_solution(k1, a));
    REQUIRE(a.l_star() == solve_oracle(k1).l_star());

    const Instance k2 = random_instance(4 + rng.below(9), 2, 2, 1 + rng.below(10), rng);
    const Solution b = solve_matching_k2n2(k2);
    CHECK_NOTHROW(validate_solution(k2, b));
    REQUIRE(b.l_star() == solve_oracle(k2).l_star());
  }
}

TEST_CASE("cyclic order") {
  const Instance fig3 = fig3_instance(2);
  const auto order = cyclic_order(fig3, 0);
  std::vector<MuSet> sets;
  for (int i : order) sets.push_back(fig3.packets[i]);
  CHECK(sets == std::vector<MuSet>{MuSet{11, 0, 1, 2}, MuSet{1, 2, 3, 4}, MuSet{3, 4, 5, 6}, MuSet{5, 6, 7, 8},
                                   MuSet{7, 8, 9, 10}, MuSet{9, 10, 11, 0}});
  CHECK(cyclic_order(fig3, 3) == std::vector<int>{3, 4, 5, 0, 1, 2});

  Instance ties{8, 1, 3, {cyclic_arc(2, 3, 8), cyclic_arc(0, 3, 8), cyclic_arc(2, 3, 8)}, PlacementTag::cyclic};
  CHECK(cyclic_order(ties, 1) == std::vector<int>{1, 0, 2});
}

TEST_CASE("cyclic solver examples") {
  const Solution fig3 = solve_cyclic(fig3_instance(2));
  CHECK(fig3.l_star() == 6);
  CHECK_NOTHROW(validate_solution(fig3_instance(2), fig3));

  const Instance one{9, 3, 5, {cyclic_arc(7, 5, 9)}, PlacementTag::cyclic};
  const Solution s = solve_cyclic(one);
  CHECK(s.l_star() == 1);
  CHECK(*s.assignments()[0] == MuSet{7, 8, 0});

  CHECK_ERROR(solve_cyclic(example1(2)), ErrorCode::WrongParams);
}

TEST_CASE("cyclic solver equals oracle on every cyclic instance with N <= 7, L <= 3") {
  for (int N = 2; N <= 7; ++N) {
    for (int n = 1; n < N; ++n) {
      for (int k = 1; k <= n; ++k) {
        for (int L = 1; L <= 3; ++L) {
          for_each_start_tuple(N, L, [&](const std::vector<int>& starts) {
            const Instance inst = cyclic_from_starts(N, n, k, starts);
            const Solution sol = solve_cyclic(inst);
            validate_solution(inst, sol);
            REQUIRE(sol.l_star() == solve_oracle(inst, OracleOptions{64}).l_star());
            for (int i = 0; i < L; ++i) {
              if (sol.served(i)) REQUIRE(assigned_run_is_consecutive(inst, sol, i));
            }
          });
        }
      }
    }
  }
}

TEST_CASE("cyclic solver equals oracle on random N=12 instances") {
  PlacementRng rng(24);
  for (int trial = 0; trial < 3000; ++trial) {
    const int n = 3 + rng.below(4);
    Instance inst = draw_cyclic(12, n, 1 + rng.below(6), rng);
    inst.k = 3;
    const Solution sol = solve_cyclic(inst);
    REQUIRE(sol.l_star() == solve_oracle(inst, OracleOptions{64}).l_star());
    for (int i = 0; i < inst.L(); ++i) {
      if (sol.served(i)) REQUIRE(assigned_run_is_consecutive(inst, sol, i));
    }
  }
}

TEST_CASE("cyclic solver cost grows roughly quadratically") {
  PlacementRng rng(25);
  auto time_at = [&](int L) {
    Instance inst = draw_cyclic(L * 2, 4, L, rng);
    inst.k = 3;
    const auto t0 = std::chrono::steady_clock::now();
    const Solution sol = solve_cyclic(inst);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(sol.l_star() <= L);
    return secs;
  };
  const double t250 = time_at(250);
  const double t1000 = time_at(1000);
  CHECK(t1000 <= 64 * t250 + 0.5);
}

TEST_CASE("balanced orientation") {
  const std::vector<std::pair<int, int>> triangle = {{1, 2}, {2, 3}, {1, 3}};
  const auto g = balanced_orientation(triangle);
  for (int v : {1, 2, 3}) {
    CHECK(g.in_degree(v) == 1);
    CHECK(g.out_degree(v) == 1);
  }
  const std::vector<std::pair<int, int>> single = {{4, 9}};
  const auto h = balanced_orientation(single);
  CHECK(h.vertices == std::vector<int>{4, 9});
  CHECK(std::abs(h.in_degree(4) - h.out_degree(4)) == 1);

  PlacementRng rng(26);
  for (int trial = 0; trial < 500; ++trial) {
    const int V = 1 + rng.below(30);
    const int E = rng.below(201);
    std::vector<std::pair<int, int>> edges;
    for (int e = 0; e < E; ++e) edges.emplace_back(rng.below(V), rng.below(V));
    const auto o = balanced_orientation(edges);
    REQUIRE(o.arcs.size() == edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto [a, b] = edges[e];
      const auto [x, y] = o.arcs[e];
      REQUIRE(((x == a && y == b) || (x == b && y == a)));
    }
    for (int v : o.vertices) REQUIRE(std::abs(o.in_degree(v) - o.out_degree(v)) <= 1);
  }
}

TEST_CASE("design solver on example 6") {
  const Instance inst = example6();
  const Solution sol = solve_design(inst, example6_design());
  CHECK(sol.l_star() == 3);
  CHECK(*sol.assignments()[0] == MuSet{2, 3});
  CHECK(*sol.assignments()[1] == MuSet{1, 4});
  CHECK(*sol.assignments()[2] == MuSet{5, 6});

  Instance one = example6();
  one.packets.resize(1);
  CHECK(*solve_design(one, example6_design()).assignments()[0] == MuSet{1, 2});

  const BlockDesign disjoint{9, 3, 1, {MuSet{0, 1, 2}, MuSet{3, 4, 5}, MuSet{6, 7, 8}}, DesignSource::file};
  const Instance spread{9, 2, 3, disjoint.blocks, PlacementTag::design};
  const Solution d = solve_design(spread, disjoint);
  CHECK(d.l_star() == 3);
  CHECK(*d.assignments()[1] == MuSet{3, 4});

  Instance stray = example6();
  stray.packets[0] = MuSet{0, 1, 2};
  CHECK_ERROR(solve_design(stray, example6_design()), ErrorCode::BlockNotInDesign);
  CHECK_ERROR(solve_design(example1(2), example6_design()), ErrorCode::WrongParams);
}

TEST_CASE("design solver with repeated blocks") {
  // k > n/2: duplicates stay unserved.
  Instance rep = example6();
  rep.packets.push_back(rep.packets[0]);
  const Solution s = solve_design(rep, example6_design());
  CHECK(s.l_star() == 3);
  CHECK_FALSE(s.served(3));

  // k <= n/2: a repeated block can serve twice.
  const BlockDesign wide{8, 4, 4, {MuSet{0, 1, 2, 3}, MuSet{4, 5, 6, 7}}, DesignSource::file};
  const Instance twice{8, 2, 4, {MuSet{0, 1, 2, 3}, MuSet{0, 1, 2, 3}}, PlacementTag::design};
  CHECK(solve_design(twice, wide).l_star() == 2);
}

TEST_CASE("design solver serves every distinct-block instance within the pairwise bound") {
  PlacementRng rng(27);
  for (int q : {2, 3}) {
    const BlockDesign plane = build_projective_plane(q);
    for (int trial = 0; trial < 2000; ++trial) {
      const int k = 1 + rng.below(plane.n);
      // Largest L with floor(t_max) >= t-1 = 1, capped by b.
      int max_L = 1;
      while (max_L + 1 <= plane.b() && t_max_floor(plane.n, k, max_L + 1) >= 1) ++max_L;
      const int L = 1 + rng.below(max_L);
      Instance inst = draw_design(plane, L, rng, false);
      inst.k = k;
      const Solution sol = solve_design(inst, plane);
      CHECK_NOTHROW(validate_solution(inst, sol));
      REQUIRE(sol.l_star() == L);
    }
  }
}

TEST_CASE("design solver matches oracle when the pairwise bound holds") {
  PlacementRng rng(28);
  const BlockDesign lex = build_lexicographic_packing(12, 5, 2);
  for (int trial = 0; trial < 500; ++trial) {
    Instance inst = draw_design(lex, 2 + rng.below(3), rng, false);
    inst.k = 3;
    if (!pairwise_holds(inst)) continue;
    REQUIRE(solve_design(inst, lex).l_star() == inst.L());
  }
}

TEST_CASE("dispatch and names") {
  CHECK(solver_from_string("k1") == SolverKind::matching_k1);
  CHECK(solver_from_string("cyclic_opt") == SolverKind::cyclic_opt);
  CHECK(solver_from_string("design") == SolverKind::design_opt);
  CHECK_ERROR(solver_from_string("simplex"), ErrorCode::ParseError);
  PlacementRng rng(1);
  CHECK(solve(SolverKind::greedy, example1(1), nullptr, &rng).l_star() == 3);
  CHECK(solve(SolverKind::oracle, example1(2)).l_star() == 2);
  const BlockDesign d = example6_design();
  CHECK(solve(SolverKind::design_opt, example6(), &d).l_star() == 3);
}

TEST_CASE("l-set packing reduction") {
  const std::vector<std::vector<int>> disjoint = {{1, 2, 3}, {4, 5, 6}};
  const auto out = reduce_lsp(disjoint, 2);
  CHECK(out.threshold == 4);
  CHECK(out.instance.k == 3);
  CHECK(out.instance.n == 4);
  CHECK(out.instance.L() == 4);
  for (const auto& s : out.instance.packets) CHECK(s.contains(out.theta));
  CHECK(solve_oracle(out.instance, OracleOptions{64}).l_star() == 4);

  const std::vector<std::vector<int>> single = {{7, 8, 9}};
  const auto one = reduce_lsp(single, 1);
  CHECK(one.instance.packets[0].intersection_size(one.instance.packets[1]) == 1);
  CHECK(solve_oracle(one.instance).l_star() == 2);

  const std::vector<std::vector<int>> twins = {{1, 2, 3}, {1, 2, 3}};
  CHECK(solve_oracle(reduce_lsp(twins, 2).instance, OracleOptions{64}).l_star() < 4);

  const std::vector<std::vector<int>> ragged = {{1, 2, 3}, {4, 5}};
  CHECK_ERROR(reduce_lsp(ragged, 1), ErrorCode::UnequalCardinality);
}

TEST_CASE("reduction agrees with brute-force set packing on random instances") {
  PlacementRng rng(29);
  for (int trial = 0; trial < 1500; ++trial) {
    const int L = 1 + rng.below(4);
    std::vector<std::vector<int>> sets;
    for (int i = 0; i < L; ++i) {
      std::vector<int> all = {0, 1, 2, 3, 4, 5, 6, 7, 8};
      rng.shuffle(std::span<int>(all));
      sets.emplace_back(all.begin(), all.begin() + 3);
    }
    const int packing = brute_force_set_packing(sets);
    const int lstar = solve_oracle(reduce_lsp(sets, 1).instance, OracleOptions{64}).l_star();
    for (int M = 0; M <= L; ++M) REQUIRE((packing >= M) == (lstar >= 2 * M));
  }
}
