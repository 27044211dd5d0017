#include <doctest.h>

#include "codedswitch/conditions.hpp"
#include "codedswitch/placement.hpp"
#include "support.hpp"

using namespace codedswitch;
using namespace testing_support;

TEST_CASE("coverage condition") {
  CHECK_FALSE(coverage_holds(example1(3)));
  CHECK(coverage_holds(example1(1)));
  Instance full{6, 2, 6, {MuSet{0, 1, 2, 3, 4, 5}, MuSet{0, 1, 2, 3, 4, 5}, MuSet{0, 1, 2, 3, 4, 5}},
                PlacementTag::custom};
  CHECK(coverage_holds(full));
}

TEST_CASE("t_max") {
  CHECK(t_max(3, 2, 3) == Rational(1));
  CHECK(t_max(4, 4, 5) == Rational(0));
  CHECK(t_max(5, 3, 3) == Rational(2));
  CHECK(t_max(5, 3, 4) == Rational(4, 3));
  CHECK(t_max_floor(5, 3, 4) == 1);
  CHECK_ERROR(t_max(3, 2, 1), ErrorCode::DegenerateL);
}

TEST_CASE("pairwise condition") {
  const BlockDesign fano = build_projective_plane(2);
  Instance three{7, 2, 3, {fano.blocks[0], fano.blocks[3], fano.blocks[5]}, PlacementTag::design};
  CHECK(pairwise_holds(three));

  Instance twins{5, 3, 3, {MuSet{0, 1, 2}, MuSet{0, 1, 2}}, PlacementTag::custom};
  CHECK_FALSE(pairwise_holds(twins));

  CHECK(pairwise_holds(example6()));

  Instance single{5, 3, 3, {MuSet{0, 1, 2}}, PlacementTag::custom};
  CHECK_ERROR(pairwise_holds(single), ErrorCode::DegenerateL);
}

TEST_CASE("t_max cross-check against exhaustive L* on random instances") {
  // n=5, k=3, L=3 gives floor(t_max)=2: instances within it must be full-throughput.
  PlacementRng rng(41);
  int within = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const Instance inst = random_instance(9, 5, 3, 3, rng);
    if (pairwise_holds(inst)) {
      ++within;
      CHECK(brute_force_lstar(inst) == 3);
    }
  }
  CHECK(within > 0);
}

TEST_CASE("Hall condition") {
  CHECK_FALSE(hall_full_throughput(example1(2)));
  CHECK(hall_full_throughput(example6()));
  Instance one{5, 3, 3, {MuSet{0, 1, 2}}, PlacementTag::custom};
  CHECK(hall_full_throughput(one));
  Instance big{30, 1, 1, {}, PlacementTag::custom};
  for (int i = 0; i < 21; ++i) big.packets.push_back(MuSet{i});
  CHECK_ERROR(hall_full_throughput(big), ErrorCode::TooLarge);
  CHECK(hall_full_throughput(big, 21));
}

TEST_CASE("Hall condition characterizes full throughput exactly (L <= 5, N <= 8)") {
  PlacementRng rng(7);
  for (int trial = 0; trial < 3000; ++trial) {
    const int N = 3 + rng.below(6);
    const int n = 1 + rng.below(N);
    const int k = 1 + rng.below(n);
    const int L = 1 + rng.below(5);
    const Instance inst = random_instance(N, n, k, L, rng);
    const bool full = brute_force_lstar(inst) == L;
    REQUIRE(hall_full_throughput(inst) == full);
    CHECK(brute_force_hall(inst) == full);
  }
}

TEST_CASE("pairwise => Hall => coverage") {
  PlacementRng rng(8);
  int pairwise_count = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    const int N = 4 + rng.below(9);
    const int n = 2 + rng.below(N - 1);
    const int k = 1 + rng.below(n);
    const int L = 2 + rng.below(5);
    const Instance inst = random_instance(N, n, k, L, rng);
    const bool hall = hall_full_throughput(inst);
    if (pairwise_holds(inst)) {
      ++pairwise_count;
      REQUIRE(hall);
    }
    if (hall) REQUIRE(coverage_holds(inst));
  }
  CHECK(pairwise_count > 100);
}

TEST_CASE("uncoded: coverage with equality iff full throughput") {
  PlacementRng rng(9);
  for (int trial = 0; trial < 2000; ++trial) {
    const int N = 6 + rng.below(5);
    const int n = 1 + rng.below(3);
    const int L = 1 + rng.below(4);
    if (n * L > N) continue;
    const Instance inst = random_instance(N, n, n, L, rng);
    CHECK((union_size(inst, (1u << L) - 1) == n * L) == (brute_force_lstar(inst) == L));
  }
}

TEST_CASE("inclusion-exclusion identity over phi sums") {
  PlacementRng rng(10);
  for (int trial = 0; trial < 300; ++trial) {
    const int N = 5 + rng.below(5);
    const int n = 1 + rng.below(N);
    const int L = 1 + rng.below(6);
    const Instance inst = random_instance(N, n, 1, L, rng);
    const IntersectionStats stats(inst);
    for (std::uint32_t fam = 1; fam < (1u << L); ++fam) {
      const int size = std::popcount(fam);
      std::int64_t value = static_cast<std::int64_t>(n) * size - stats.phi(2, fam);
      for (int s = 3; s <= size; ++s) value += (s % 2 == 1 ? 1 : -1) * stats.phi(s, fam);
      REQUIRE(value == union_size(inst, fam));
    }
  }
}

TEST_CASE("phi matches explicit intersection sums") {
  const Instance inst{7, 1, 3, {MuSet{1, 2, 3}, MuSet{1, 4, 5}, MuSet{3, 5, 6}, MuSet{1, 3, 5}}, PlacementTag::custom};
  const IntersectionStats stats(inst);
  CHECK(stats.max_pairwise() == 2);
  CHECK(stats.pairwise(0, 0) == 3);
  // Phi_2 over {1,2,3}: |S1∩S2| + |S1∩S3| + |S2∩S3| = 1 + 1 + 1.
  CHECK(stats.phi(2, 0b0111) == 3);
  // Phi_2 over all four: 3 + |S1∩S4|=2 + |S2∩S4|=2 + |S3∩S4|=2.
  CHECK(stats.phi(2, 0b1111) == 9);
  CHECK(stats.phi(3, 0b1111) == 3);  // {1} in S1,S2,S4; {3} in S1,S3,S4; {5} in S2,S3,S4
  CHECK(stats.phi(4, 0b1111) == 0);
}
