#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "threefold/group.hpp"

using namespace threefold;

namespace {

// brute-force conjugacy classes
int conjugacy_class_count(const FiniteGroup& g) {
  std::set<int> seen;
  int classes = 0;
  for (int a = 0; a < g.order; ++a) {
    if (seen.count(a)) continue;
    ++classes;
    for (int h = 0; h < g.order; ++h)
      seen.insert(g.times(g.times(h, a), g.inverse(h)));
  }
  return classes;
}

}  // namespace

TEST_CASE("constructors satisfy the group axioms exactly") {
  for (const char* spec : {"cyclic:1", "cyclic:2", "cyclic:4", "cyclic:6",
                           "dihedral:3", "dihedral:4", "q8",
                           "product(cyclic:3,cyclic:3)", "product(q8,cyclic:2)"}) {
    const FiniteGroup g = make_group(spec);
    CHECK_NOTHROW(g.validate());
    CHECK(g.identity == 0);
  }
}

TEST_CASE("trivial group") {
  const FiniteGroup g = make_group("cyclic:1");
  CHECK(g.order == 1);
}

TEST_CASE("dihedral:3 is C3v: order 6, non-abelian, 3 conjugacy classes") {
  const FiniteGroup g = make_group("dihedral:3");
  CHECK(g.order == 6);
  CHECK_FALSE(g.is_abelian());
  CHECK(conjugacy_class_count(g) == 3);
}

TEST_CASE("product(cyclic:3,cyclic:3) is abelian of order 9") {
  const FiniteGroup g = make_group("product(cyclic:3,cyclic:3)");
  CHECK(g.order == 9);
  CHECK(g.is_abelian());
  for (int x = 0; x < 9; ++x)
    CHECK(g.times(x, g.times(x, x)) == g.identity);  // exponent 3
}

TEST_CASE("q8 structure") {
  const FiniteGroup g = quaternion_group();
  CHECK(g.order == 8);
  CHECK_FALSE(g.is_abelian());
  int involutions = 0;  // solutions of g^2 = e
  for (int x = 0; x < 8; ++x)
    if (g.times(x, x) == g.identity) ++involutions;
  CHECK(involutions == 2);  // 1 and -1
  CHECK(conjugacy_class_count(g) == 5);
}

TEST_CASE("malformed specs are rejected with the offending token") {
  using doctest::Contains;
  CHECK_THROWS_WITH_AS(make_group("cyclic:0"), Contains("cyclic:0"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_group("dihedral:2"), Contains("dihedral:2"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_group("frobnicate"), Contains("frobnicate"),
                       std::invalid_argument);
  CHECK_THROWS_AS(make_group("product(cyclic:2"), std::invalid_argument);
  CHECK_THROWS_AS(make_group("cyclic:2)"), std::invalid_argument);
  CHECK_THROWS_AS(make_group("cyclic:abc"), std::invalid_argument);
}

TEST_CASE("identity tilde map is always a valid time reversal") {
  for (const char* spec : {"cyclic:2", "dihedral:3", "q8"}) {
    const FiniteGroup g = make_group(spec);
    const auto trs = identity_time_reversal(g, +1);
    CHECK(trs.is_direct_product());
    CHECK(trs.omega_tt == 1);
  }
}

TEST_CASE("inversion is a valid involutory automorphism on Z4") {
  const FiniteGroup g = make_group("cyclic:4");
  std::vector<int> invmap(4);
  for (int x = 0; x < 4; ++x) invmap[x] = g.inverse(x);
  const auto trs = make_time_reversal(g, invmap, +1);
  CHECK_FALSE(trs.is_direct_product());
  for (int x = 0; x < 4; ++x) CHECK(trs.apply(trs.apply(x)) == x);
}

TEST_CASE("non-automorphic map on Q8 is rejected naming the violating pair") {
  const FiniteGroup g = quaternion_group();
  // swap i <-> j (indices 2<->4, 3<->5) while fixing k: i*j = k maps to
  // j*i = -k, so this involution is not an automorphism
  std::vector<int> bad{0, 1, 4, 5, 2, 3, 6, 7};
  CHECK_THROWS_WITH_AS(make_time_reversal(g, bad, +1),
                       doctest::Contains("automorphism"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_time_reversal(g, bad, -1),
                       doctest::Contains("pair"), std::invalid_argument);
}

TEST_CASE("non-involutive maps are rejected") {
  const FiniteGroup g = make_group("cyclic:4");
  std::vector<int> shift{1, 2, 3, 0};  // an automorphism candidate but not involutive
  CHECK_THROWS_WITH_AS(make_time_reversal(g, shift, +1),
                       doctest::Contains("involution"), std::invalid_argument);
}

TEST_CASE("tilde map length must match the order") {
  const FiniteGroup g = make_group("cyclic:4");
  CHECK_THROWS_AS(make_time_reversal(g, {0, 1}, +1), std::invalid_argument);
}
