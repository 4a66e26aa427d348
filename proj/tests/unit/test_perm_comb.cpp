#include <set>

#include "doctest.h"
#include "tracelimits/pairings.hpp"
#include "tracelimits/permutation.hpp"

using namespace tracelimits;

TEST_CASE("composition applies the right factor first") {
  const auto q = Permutation0::parse("(02)(13)", 3);
  CHECK(compose(Permutation0::identity(3), q) == q);
  const auto t = Permutation0::parse("(01)", 1);
  CHECK(compose(t, t).is_identity());
  const auto pi = Permutation0::parse("(0)(2)(13)", 3);
  const auto alpha = Permutation0::full_cycle(3);
  CHECK(compose(pi, alpha) == Permutation0::parse("(03)(12)", 3));
  CHECK(compose(pi, alpha).to_string() == "(03)(12)");
}

TEST_CASE("inverse undoes composition") {
  const auto p = Permutation0::parse("(0 4 2)(1 3)", 5);
  CHECK(compose(p, inverse(p)).is_identity());
  CHECK(compose(inverse(p), p).is_identity());
}

TEST_CASE("cyc0 counts cycles besides the one holding 0") {
  CHECK(cyc0(Permutation0::parse("(0)(13)(24)", 4)) == 2);
  CHECK(cyc0(Permutation0::identity(5)) == 5);
  CHECK(cyc0(Permutation0::parse("(0)(153426)", 6)) == 1);
  CHECK(cyc0(Permutation0::full_cycle(4)) == 0);
}

TEST_CASE("restrict_relabel skips removed elements inside cycles") {
  const auto alpha = Permutation0::parse("(13524)", 5);
  CHECK(restrict_relabel(alpha, {2, 5}) == Permutation0::parse("(123)", 3));
  CHECK(restrict_relabel(alpha, {}) == alpha);
  const auto pa = compose(Partition12::parse("(23)", 3).as_permutation(), Permutation0::full_cycle(3));
  CHECK(pa == Permutation0::parse("(013)(2)", 3));
  CHECK(restrict_relabel(pa, {2, 3}) == Permutation0::parse("(01)", 1));
  CHECK_THROWS(restrict_relabel(alpha, {0}));
}

TEST_CASE("contraction examples") {
  const auto a4 = Permutation0::full_cycle(4);
  const Contraction c1 = contract(a4, Partition12::parse("(13)(24)", 4));
  CHECK(c1.beta == Permutation0::identity(0));
  CHECK(c1.n_exponent == 2);
  CHECK(c1.l == 2);

  const Contraction c2 = contract(Permutation0::full_cycle(3), Partition12::parse("", 3));
  CHECK(c2.beta == Permutation0::full_cycle(3));
  CHECK(c2.n_exponent == 0);
  CHECK(c2.l == 0);

  const Contraction c3 = contract(a4, Partition12::parse("(14)", 4));
  CHECK(c3.beta == Permutation0::parse("(0)(12)", 2));
  CHECK(c3.n_exponent == 1);
  CHECK(c3.l == 1);
}

TEST_CASE("partition and pairing counts") {
  CHECK(enumerate_partition12(2).size() == 2);
  CHECK(enumerate_partition12(3).size() == 4);
  CHECK(enumerate_partition12(4).size() == 10);
  for (int n = 1; n <= 8; ++n) CHECK(enumerate_partition12(n).size() == involution_count(n));

  CHECK(enumerate_inhomogeneous_pairings(2, 2).size() == 2);
  CHECK(enumerate_inhomogeneous_pairings(3, 2).size() == 6);
  const auto single = enumerate_inhomogeneous_pairings(1, 2);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == Partition12::parse("(12)", 2));
  CHECK_THROWS(enumerate_inhomogeneous_pairings(3, 3));
  CHECK(count_inhomogeneous_pairings(2, 3) == 8);
}

TEST_CASE("inhomogeneous pairings are distinct and avoid their own block") {
  std::set<std::vector<int>> seen;
  for_each_inhomogeneous_pairing(2, 4, [&](const std::vector<int>& p) {
    CHECK(is_inhomogeneous(p, 2));
    seen.insert(p);
  });
  CHECK(seen.size() == count_inhomogeneous_pairings(2, 4));
  // brute-force count: perfect pairings of [8] with no pair inside a block
  std::uint64_t brute = 0;
  for_each_perfect_pairing(8, [&](const std::vector<int>& p) { brute += is_inhomogeneous(p, 2); });
  CHECK(brute == seen.size());
}

TEST_CASE("block-rigid non-crossing pairings") {
  CHECK(is_block_rigid_noncrossing(Partition12::parse("(14)(23)", 4), 2, 2));
  CHECK_FALSE(is_block_rigid_noncrossing(Partition12::parse("(13)(24)", 4), 2, 2));
  CHECK(is_block_rigid_noncrossing(Partition12::parse("(16)(25)(34)", 6), 3, 2));
  CHECK_FALSE(is_block_rigid_noncrossing(Partition12::parse("(15)(26)(34)", 6), 3, 2));
}

TEST_CASE("catalan numbers") {
  const std::uint64_t expected[] = {1, 1, 2, 5, 14, 42, 132, 429};
  for (int p = 0; p < 8; ++p) CHECK(catalan(p) == expected[p]);
}

TEST_CASE("cyc0_of_product agrees with explicit composition") {
  const auto alpha = Permutation0::full_cycle(6);
  for_each_inhomogeneous_pairing(3, 2, [&](const std::vector<int>& p) {
    const Partition12 pi(p);
    CHECK(cyc0_of_product(p, alpha) == cyc0(compose(pi.as_permutation(), alpha)));
  });
}

TEST_CASE("parse accepts spaced multi-digit cycles") {
  const auto p = Permutation0::parse("(0 10 3)", 10);
  CHECK(p(0) == 10);
  CHECK(p(10) == 3);
  CHECK(p(3) == 0);
  CHECK(p(5) == 5);
}
