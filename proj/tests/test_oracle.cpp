#include <doctest.h>

#include "helpers.hpp"

using namespace siso;
using namespace siso::testing;

TEST_CASE("brute string iso micro-cases") {
  // trivial group: {id} iff the strings agree on the window
  GenSet triv(3, {});
  CHECK_FALSE(oracle::brute_string_iso(triv, {0, 1, 2}, {0, 1, 2}, {0, 1, 2}).empty());
  CHECK(oracle::brute_string_iso(triv, {0, 1, 2}, {0, 2, 1}, {0, 1, 2}).empty());

  // S_3 with aab vs aba: coset of size 2
  StabChain s3 = suites::symmetric_group(3);
  Coset c = oracle::brute_string_iso(s3.gen_set(), {0, 0, 1}, {0, 1, 0}, {0, 1, 2});
  REQUIRE_FALSE(c.empty());
  CHECK(c.size() == 2);

  // empty window: the whole group
  Coset all = oracle::brute_string_iso(s3.gen_set(), {0, 1, 0}, {1, 1, 1}, {});
  CHECK(all.size() == 6);
}

TEST_CASE("brute graph automorphisms") {
  oracle::GraphView k4{4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  CHECK(oracle::brute_graph_aut(k4).order() == 24);

  oracle::GraphView p3{3, {{0, 1}, {1, 2}}};
  CHECK(oracle::brute_graph_aut(p3).order() == 2);

  oracle::GraphView petersen{10,
                             {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
                              {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                              {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}}};
  CHECK(oracle::brute_graph_aut(petersen).order() == 120);
}

TEST_CASE("coset equality") {
  StabChain a4 = suites::alternating_group(4);
  StabChain s4 = suites::symmetric_group(4);
  Coset a(a4, Perm(4));
  Coset b(a4, Perm::from_three_cycle(4, 0, 1, 2)); // rep differs by a member
  CHECK(oracle::coset_equal(a, a));
  CHECK(oracle::coset_equal(a, b));
  CHECK_FALSE(oracle::coset_equal(a, Coset(s4, Perm(4))));
  CHECK_FALSE(oracle::coset_equal(a, Coset::empty_set()));
  CHECK(oracle::coset_equal(Coset::empty_set(), Coset::empty_set()));
  // same subgroup, rep outside: different coset
  CHECK_FALSE(oracle::coset_equal(a, Coset(a4, Perm::from_two_cycle(4, 0, 1))));
}
