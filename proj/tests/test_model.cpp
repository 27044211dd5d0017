#include <doctest.h>

#include "codedswitch/json_io.hpp"
#include "codedswitch/model.hpp"
#include "codedswitch/placement.hpp"
#include "support.hpp"

using namespace codedswitch;
using testing_support::example1;

TEST_CASE("MuSet keeps indices sorted and unique") {
  MuSet s{4, 1, 3, 1};
  CHECK(s.size() == 3);
  CHECK(std::vector<int>(s.begin(), s.end()) == std::vector<int>{1, 3, 4});
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(2));
  CHECK(MuSet::from_mask(s.mask()) == s);
  CHECK(s.intersection_size(MuSet{0, 1, 4}) == 2);
}

TEST_CASE("validate_instance") {
  SUBCASE("example 1 is valid") { CHECK_NOTHROW(validate_instance(example1(2))); }
  SUBCASE("index out of range") {
    Instance inst{5, 2, 3, {MuSet{0, 1, 5}}, PlacementTag::custom};
    CHECK_ERROR(validate_instance(inst), ErrorCode::IndexOutOfRange);
  }
  SUBCASE("not a cyclic arc") {
    Instance inst{5, 2, 3, {MuSet{0, 2, 4}}, PlacementTag::cyclic};
    CHECK_ERROR(validate_instance(inst), ErrorCode::NotCyclicArc);
  }
  SUBCASE("wrap-around arc is accepted") {
    Instance inst{5, 2, 3, {MuSet{3, 4, 0}, MuSet{4, 0, 1}}, PlacementTag::cyclic};
    CHECK_NOTHROW(validate_instance(inst));
  }
  SUBCASE("cardinality mismatch") {
    Instance inst{5, 2, 3, {MuSet{0, 1}}, PlacementTag::custom};
    CHECK_ERROR(validate_instance(inst), ErrorCode::CardinalityMismatch);
  }
  SUBCASE("k > n") {
    Instance inst{5, 4, 3, {}, PlacementTag::custom};
    CHECK_ERROR(validate_instance(inst), ErrorCode::BadParams);
  }
}

TEST_CASE("arc_start and storage order") {
  CHECK(arc_start(MuSet{0, 1, 2}, 5) == 0);
  CHECK(arc_start(MuSet{0, 1, 4}, 5) == 4);
  CHECK_FALSE(arc_start(MuSet{0, 2, 3}, 5).has_value());
  Instance inst{12, 2, 4, {cyclic_arc(11, 4, 12)}, PlacementTag::cyclic};
  CHECK(storage_order(inst, 0) == std::vector<int>{11, 0, 1, 2});
  inst.placement = PlacementTag::custom;
  CHECK(storage_order(inst, 0) == std::vector<int>{0, 1, 2, 11});
}

TEST_CASE("validate_solution") {
  const Instance inst = example1(2);
  SUBCASE("known solution for k=2") {
    Solution sol({MuSet{0, 1}, MuSet{3, 4}, std::nullopt}, inst.k, inst.N);
    CHECK_NOTHROW(validate_solution(inst, sol));
    CHECK(sol.l_star() == 2);
    CHECK(throughput(inst, sol) == 0.8);
    CHECK(sol.rho() == Rational(4, 5));
  }
  SUBCASE("overlap") {
    Solution sol({MuSet{0, 1}, MuSet{1, 3}, std::nullopt}, inst.k, inst.N);
    CHECK_ERROR(validate_solution(inst, sol), ErrorCode::Overlap);
  }
  SUBCASE("not a subset") {
    Solution sol({MuSet{0, 3}, std::nullopt, std::nullopt}, inst.k, inst.N);
    CHECK_ERROR(validate_solution(inst, sol), ErrorCode::NotSubset);
  }
  SUBCASE("wrong cardinality") {
    Solution sol({MuSet{0}, std::nullopt, std::nullopt}, inst.k, inst.N);
    CHECK_ERROR(validate_solution(inst, sol), ErrorCode::WrongCardinality);
  }
  SUBCASE("empty solution") {
    const Solution sol = Solution::empty(inst);
    CHECK_NOTHROW(validate_solution(inst, sol));
    CHECK(sol.l_star() == 0);
    CHECK(throughput(inst, sol) == 0.0);
  }
  SUBCASE("inconsistent claims") {
    auto sol = Solution::with_claims({MuSet{0, 1}, std::nullopt, std::nullopt}, 2, Rational(4, 5));
    CHECK_ERROR(validate_solution(inst, sol), ErrorCode::RhoMismatch);
  }
}

TEST_CASE("throughput for k=1 reads all of example 1") {
  const Instance inst = example1(1);
  Solution sol({MuSet{0}, MuSet{1}, MuSet{2}}, inst.k, inst.N);
  CHECK(throughput(inst, sol) == 0.6);
}

TEST_CASE("bipartite view has n*L edges") {
  PlacementRng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = draw_uniform(9, 4, 5, rng);
    const auto g = BipartiteView::of(inst);
    CHECK(g.edges.size() == static_cast<std::size_t>(inst.n * inst.L()));
    for (const auto& [i, m] : g.edges) CHECK(inst.packets[i].contains(m));
  }
}

TEST_CASE("solution invariants hold for arbitrary valid assignments") {
  // rho never exceeds 1 and grows with l_star.
  const Instance inst = example1(1);
  Rational prev(-1);
  for (int served = 0; served <= 3; ++served) {
    std::vector<std::optional<MuSet>> as(3);
    for (int i = 0; i < served; ++i) as[i] = MuSet{std::vector<int>{0, 1, 2}[i]};
    Solution sol(as, inst.k, inst.N);
    CHECK_NOTHROW(validate_solution(inst, sol));
    CHECK(sol.rho() > prev);
    CHECK(sol.rho() <= 1);
    CHECK(sol.l_star() * inst.k <= inst.N);
    prev = sol.rho();
  }
}

TEST_CASE("instance and solution JSON round-trip bit-exactly") {
  PlacementRng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst = draw_cyclic(12, 4, 6, rng);
    const std::string text = to_json(inst).dump();
    const Instance back = instance_from_json(ordered_json::parse(text));
    CHECK(to_json(back).dump() == text);
    CHECK(back.packets == inst.packets);
    CHECK(back.placement == PlacementTag::cyclic);
  }
  const Instance inst = example1(2);
  Solution sol({MuSet{0, 1}, std::nullopt, MuSet{3, 4}}, inst.k, inst.N);
  const std::string text = to_json(sol, inst).dump();
  CHECK(text == R"({"N":5,"k":2,"n":3,"assignments":[[0,1],null,[3,4]],"l_star":2,"rho":0.8})");
  const Solution back = solution_from_json(ordered_json::parse(text));
  CHECK(to_json(back, inst).dump() == text);
  CHECK_NOTHROW(validate_solution(inst, back));

  auto tampered = ordered_json::parse(text);
  tampered["rho"] = 0.6;
  CHECK_ERROR(validate_solution(inst, solution_from_json(tampered)), ErrorCode::RhoMismatch);
}
