#include "doctest.h"

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pma/group.hpp"

using namespace pma;

TEST_CASE("group basics") {
  FinAbGroup G = make_group({2, 4});
  CHECK(G.rank() == 2);
  CHECK(G.order() == 8);
  CHECK(G.invariant_factor);
  CHECK_FALSE(make_group({4, 2}).invariant_factor);
  CHECK(make_group({3, 3}).invariant_factor);
  CHECK(make_group({1, 5}).invariant_factor);
  CHECK_FALSE(make_group({2, 3}).invariant_factor);
  CHECK(make_group({}).order() == 1);
  CHECK_THROWS_AS(make_group({0}), std::invalid_argument);
  CHECK_THROWS_AS(make_group({-2}), std::invalid_argument);
}

TEST_CASE("element arithmetic and canonical form") {
  FinAbGroup G = make_group({2, 4});
  GroupElem a = make_elem(G, {1, 3});
  GroupElem b = make_elem(G, {1, 2});
  CHECK(make_elem(G, {3, -1}) == make_elem(G, {1, 3}));
  CHECK(elem_mul(G, a, b) == make_elem(G, {0, 1}));
  CHECK(elem_mul(G, a, elem_inv(G, a)) == identity(G));
  CHECK(elem_pow(G, a, 4) == identity(G));
  CHECK(elem_pow(G, a, -1) == elem_inv(G, a));
  CHECK(elem_pow(G, a, 7) == elem_inv(G, a));
  CHECK(is_identity(identity(G)));
  CHECK_FALSE(is_identity(a));
  CHECK(to_string(a) == "[1,3]");
}

TEST_CASE("mixed-radix enumeration round-trips, last coordinate fastest") {
  FinAbGroup G = make_group({2, 3, 4});
  CHECK(elem_at(G, 0) == identity(G));
  CHECK(elem_at(G, 1) == make_elem(G, {0, 0, 1}));
  CHECK(elem_at(G, 4) == make_elem(G, {0, 1, 0}));
  for (std::int64_t i = 0; i < G.order(); ++i) {
    CHECK(elem_index(G, elem_at(G, i)) == i);
  }
}

namespace {

// Order of a by plain iteration, the obvious oracle.
std::int64_t brute_order(const FinAbGroup& G, const GroupElem& a) {
  GroupElem x = a;
  std::int64_t n = 1;
  while (!is_identity(x)) {
    x = elem_mul(G, x, a);
    ++n;
  }
  return n;
}

void check_iso(const FinAbGroup& G) {
  InvariantFactorIso iso = invariant_factor_form(G);
  const FinAbGroup& H = iso.target;
  REQUIRE(H.invariant_factor);
  REQUIRE(H.order() == G.order());
  for (std::size_t i = 0; i + 1 < H.moduli.size(); ++i)
    CHECK(H.moduli[i + 1] % H.moduli[i] == 0);
  for (std::int64_t i = 0; i < G.order(); ++i) {
    GroupElem a = elem_at(G, i);
    GroupElem fa = iso.forward(a);
    CHECK(iso.backward(fa) == a);
    CHECK(brute_order(G, a) == brute_order(H, fa));
    for (std::int64_t j = 0; j < G.order(); ++j) {
      GroupElem b = elem_at(G, j);
      CHECK(iso.forward(elem_mul(G, a, b)) == elem_mul(H, fa, iso.forward(b)));
    }
  }
  for (std::int64_t i = 0; i < H.order(); ++i) {
    GroupElem b = elem_at(H, i);
    CHECK(iso.forward(iso.backward(b)) == b);
  }
}

}  // namespace

TEST_CASE("invariant factor form is a mutually inverse pair of homomorphisms") {
  // Every presentation of order <= 64 with small factors, plus shapes that
  // force CRT regrouping across positions.
  check_iso(make_group({2, 3}));          // -> Z_6
  check_iso(make_group({6, 4}));          // -> Z_2 x Z_12
  check_iso(make_group({4, 6}));
  check_iso(make_group({2, 2, 3}));       // -> Z_2 x Z_6
  check_iso(make_group({12, 2}));
  check_iso(make_group({8, 3}));          // -> Z_24
  check_iso(make_group({9, 4}));          // -> Z_36
  check_iso(make_group({2, 4}));          // already invariant factor
  check_iso(make_group({1, 6}));
  check_iso(make_group({5}));
  check_iso(make_group({}));
  check_iso(make_group({2, 2, 2, 2}));
  check_iso(make_group({3, 4, 5}));       // -> Z_60
}

TEST_CASE("invariant factor target matches the classification") {
  CHECK(invariant_factor_form(make_group({2, 3})).target.moduli ==
        std::vector<std::int64_t>{6});
  CHECK(invariant_factor_form(make_group({6, 4})).target.moduli ==
        std::vector<std::int64_t>{2, 12});
  CHECK(invariant_factor_form(make_group({2, 2, 3})).target.moduli ==
        std::vector<std::int64_t>{2, 6});
  CHECK(invariant_factor_form(make_group({4, 6, 15})).target.moduli ==
        std::vector<std::int64_t>{6, 60});
}
