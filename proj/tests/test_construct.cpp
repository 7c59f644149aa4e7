#include "doctest.h"

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pma/construct.hpp"

using namespace pma;

namespace {

GeneralizedDynkinDiagram rank1(Phase q) { return diagram_from_constants({q}, {{Phase{}}}); }

const IntMat kA2{{2, -1}, {-1, 2}};
const IntMat kB2{{2, -2}, {-1, 2}};
const IntMat kG2{{2, -3}, {-1, 2}};
const IntMat kA1A1{{2, 0}, {0, 2}};

}  // namespace

TEST_CASE("exponent bump and its multiplicative closure") {
  CHECK(upsilon(3) == 4);
  CHECK(upsilon(0) == 0);
  CHECK(upsilon(4) == 4);
  CHECK(upsilon(1) == 2);

  CHECK(big_upsilon(1) == 1);
  CHECK(big_upsilon(9) == 9);
  CHECK(big_upsilon(12) == 36);
  CHECK(big_upsilon(4) == 4);
  CHECK(big_upsilon(30) == 900);
  CHECK(big_upsilon(7) == 49);
  // always a perfect square
  for (std::int64_t k = 1; k <= 200; ++k) {
    std::int64_t u = big_upsilon(k), r = 0;
    while (r * r < u) ++r;
    CHECK(r * r == u);
    CHECK(u % k == 0);
  }
  CHECK_THROWS_AS(big_upsilon(0), std::invalid_argument);

  CHECK(squarefree(6));
  CHECK_FALSE(squarefree(4));
  CHECK(squarefree(1));
  CHECK(squarefree(30));
  CHECK_FALSE(squarefree(12));
  CHECK_THROWS_AS(squarefree(0), std::invalid_argument);
}

TEST_CASE("standard construction on one-vertex diagrams") {
  // order 9 -> base Z_3, order 4 -> base Z_2
  StandardConstruction s9 = standard_construction(rank1(make_phase(1, 9)));
  CHECK_FALSE(s9.refused);
  CHECK(s9.m == 3);
  REQUIRE(s9.datum.has_value());
  CHECK(verify_root_datum(*s9.datum).pass());
  CHECK(s9.genuine);
  REQUIRE(s9.constants.has_value());
  CHECK(s9.constants->a_l == std::vector<std::int64_t>{1});
  // one-parameter closed form disagrees here: 2 * 9 against our 3
  REQUIRE(s9.one_param_m.has_value());
  CHECK(*s9.one_param_m == 18);

  StandardConstruction s4 = standard_construction(rank1(make_phase(1, 4)));
  CHECK(s4.m == 2);
  CHECK(s4.genuine);
  REQUIRE(s4.one_param_m.has_value());
  CHECK(*s4.one_param_m == 4);  // even order: formula agrees with big_upsilon
  CHECK(verify_root_datum(*s4.datum).pass());

  for (std::int64_t ord : {2, 3, 6, 30}) {
    StandardConstruction s = standard_construction(rank1(make_phase(1, ord)));
    CHECK(s.refused);
    CHECK_FALSE(s.datum.has_value());
    CHECK(s.reason == "all label orders are squarefree: no nontrivial associator possible");
  }

  CHECK_THROWS_AS(standard_construction(rank1(Phase{})), std::invalid_argument);
}

TEST_CASE("standard construction keeps non-primitive labels exact") {
  // q_11 = zeta_9^2: same order, different phase; the datum must read back
  // the label itself, not the primitive root
  StandardConstruction s = standard_construction(rank1(make_phase(2, 9)));
  CHECK(s.m == 3);
  CHECK(s.datum->diagram.q_ii[0] == make_phase(2, 9));
  YDModuleData V = build_yd_module(*s.datum);
  CHECK(braiding_of_yd(V).q_ii[0] == make_phase(2, 9));
  CHECK(s.constants->a_l == std::vector<std::int64_t>{2});
}

TEST_CASE("standard construction on a rank-2 diagram") {
  // labels of orders 9 and 3: lcm of squared-up orders is 9, base Z_3 x Z_3
  Phase z;
  GeneralizedDynkinDiagram D = diagram_from_constants(
      {make_phase(1, 9), make_phase(1, 3)}, {{z, make_phase(2, 3)}, {make_phase(2, 3), z}});
  StandardConstruction s = standard_construction(D);
  CHECK_FALSE(s.refused);
  CHECK(s.m == 3);
  CHECK_FALSE(s.one_param_m.has_value());
  REQUIRE(s.datum.has_value());
  CHECK(s.datum->base.moduli == std::vector<std::int64_t>{3, 3});
  CHECK(verify_root_datum(*s.datum).pass());
  CHECK(s.datum->diagram == D);

  // round-trip through the module reproduces the input labels exactly
  YDModuleData V = build_yd_module(*s.datum);
  CHECK(braiding_of_yd(V) == D);
  CHECK(yd_module_descends(V, s.datum->base));

  // lower triangle is zero mod the base modulus (it is zero outright)
  CHECK(s.datum->X[1][0] == 0);

  // constants recovered directly from X: a_i = x_ii, a_12 = x_12 mod m
  CHECK(s.constants->a_l == std::vector<std::int64_t>{1, 0});
  CHECK(s.constants->a_ij == std::vector<std::int64_t>{0});
  CHECK(s.genuine);
}

TEST_CASE("component splitting validates the matrix") {
  CHECK(cartan_components(kA2) == std::vector<std::vector<std::size_t>>{{0, 1}});
  CHECK(cartan_components(kA1A1) == std::vector<std::vector<std::size_t>>{{0}, {1}});

  IntMat block{{2, -1, 0, 0}, {-1, 2, 0, 0}, {0, 0, 2, -2}, {0, 0, -1, 2}};
  CHECK(cartan_components(block) ==
        std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}});

  // interleaved component: {0,2} comes before {1}
  IntMat weave{{2, 0, -1}, {0, 2, 0}, {-1, 0, 2}};
  CHECK(cartan_components(weave) == std::vector<std::vector<std::size_t>>{{0, 2}, {1}});

  CHECK_THROWS_AS(cartan_components(IntMat{{1}}), std::invalid_argument);
  CHECK_THROWS_AS(cartan_components(IntMat{{2, 1}, {1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(cartan_components(IntMat{{2, -1}, {0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(cartan_components(IntMat{{2, -1}}), std::invalid_argument);
}

TEST_CASE("cartan construction over the default modulus") {
  CartanConstruction a2 = cartan_construction(kA2);
  CHECK(a2.d == std::vector<std::int64_t>{1, 1});
  CHECK(a2.orders == std::vector<std::int64_t>{3});
  CHECK(a2.datum.base.moduli == std::vector<std::int64_t>{3, 3});
  CHECK(verify_root_datum(a2.datum).pass());
  CHECK(a2.datum.diagram.q_ii[0] == make_phase(1, 9));
  CHECK(a2.datum.diagram.q_ii[1] == make_phase(1, 9));
  CHECK(a2.datum.diagram.tilde(0, 1) == make_phase(8, 9));  // q_11^{c_12}
  CHECK(a2.constants.a_l == std::vector<std::int64_t>{1, 1});
  CHECK(a2.genuine);

  CartanConstruction b2 = cartan_construction(kB2);
  CHECK(b2.d == std::vector<std::int64_t>{1, 2});
  CHECK(b2.datum.diagram.q_ii[0] == make_phase(1, 9));
  CHECK(b2.datum.diagram.q_ii[1] == make_phase(2, 9));
  CHECK(b2.datum.diagram.tilde(0, 1) == make_phase(7, 9));  // q_11^{-2}
  CHECK(b2.constants.a_l == std::vector<std::int64_t>{1, 2});
  CHECK(verify_root_datum(b2.datum).pass());

  CartanConstruction aa = cartan_construction(kA1A1);
  CHECK(aa.orders == std::vector<std::int64_t>{3, 3});
  CHECK(aa.d == std::vector<std::int64_t>{1, 1});
  CHECK_FALSE(aa.datum.diagram.edge(0, 1));
  CHECK(verify_root_datum(aa.datum).pass());

  // triple edge defaults to 5 and rejects an explicit 3
  CartanConstruction g2 = cartan_construction(kG2);
  CHECK(g2.d == std::vector<std::int64_t>{1, 3});
  CHECK(g2.orders == std::vector<std::int64_t>{5});
  CHECK(g2.datum.base.moduli == std::vector<std::int64_t>{5, 5});
  CHECK(g2.datum.diagram.q_ii[0] == make_phase(1, 25));
  CHECK(g2.datum.diagram.q_ii[1] == make_phase(3, 25));
  CHECK(g2.datum.diagram.tilde(0, 1) == make_phase(22, 25));  // q_11^{-3}
  CHECK(g2.constants.a_l == std::vector<std::int64_t>{1, 3});
  CHECK(verify_root_datum(g2.datum).pass());
  CHECK_THROWS_AS(cartan_construction(kG2, {3}), std::invalid_argument);
}

TEST_CASE("cartan modulus choices and chain constraints") {
  CartanConstruction a2_9 = cartan_construction(kA2, {9});
  CHECK(a2_9.datum.base.moduli == std::vector<std::int64_t>{9, 9});
  CHECK(verify_root_datum(a2_9.datum).pass());
  CHECK(a2_9.constants.a_l == std::vector<std::int64_t>{1, 1});

  // two components with distinct moduli in a chain
  CartanConstruction aa = cartan_construction(kA1A1, {3, 9});
  CHECK(aa.datum.base.moduli == std::vector<std::int64_t>{3, 9});
  CHECK(verify_root_datum(aa.datum).pass());
  CHECK(braiding_of_yd(build_yd_module(aa.datum)) == aa.datum.diagram);

  CHECK_THROWS_AS(cartan_construction(kA1A1, {3}), std::invalid_argument);
  CHECK_THROWS_AS(cartan_construction(kA1A1, {3, 4}), std::invalid_argument);
  CHECK_THROWS_AS(cartan_construction(kA1A1, {9, 3}), std::invalid_argument);
  CHECK_THROWS_AS(cartan_construction(kA1A1, {1, 3}), std::invalid_argument);

  // A_2 followed by G_2 cannot satisfy both chain and 3-freeness by default
  IntMat mixed{{2, -1, 0, 0}, {-1, 2, 0, 0}, {0, 0, 2, -3}, {0, 0, -1, 2}};
  CHECK_THROWS_AS(cartan_construction(mixed), std::invalid_argument);
  // explicit admissible choice: 3 then... no multiple of 3 is prime to 3
  CHECK_THROWS_AS(cartan_construction(mixed, {3, 15}), std::invalid_argument);
  // G_2 first then A_2 works by default (5 then 5)
  IntMat mixed2{{2, -3, 0, 0}, {-1, 2, 0, 0}, {0, 0, 2, -1}, {0, 0, -1, 2}};
  CartanConstruction g2a2 = cartan_construction(mixed2);
  CHECK(g2a2.orders == std::vector<std::int64_t>{5, 5});
  CHECK(verify_root_datum(g2a2.datum).pass());

  // non-symmetrizable: c_12 c_21 = 2 one way, 1 the other is fine, but an
  // inconsistent cycle is not
  IntMat cyc{{2, -1, -1}, {-1, 2, -1}, {-2, -1, 2}};
  CHECK_THROWS_AS(cartan_construction(cyc), std::invalid_argument);

  // moduli must ascend with the vertex order
  IntMat weave{{2, 0, -1}, {0, 2, 0}, {-1, 0, 2}};
  CHECK_THROWS_AS(cartan_construction(weave, {3, 9}), std::invalid_argument);
}

TEST_CASE("cartan modules descend and round-trip") {
  for (const IntMat* C : {&kA2, &kB2, &kA1A1}) {
    CartanConstruction c = cartan_construction(*C);
    YDModuleData V = build_yd_module(c.datum);
    CHECK(yd_module_descends(V, c.datum.base));
    CHECK(braiding_of_yd(V) == c.datum.diagram);
    CHECK(support_group(V).is_full);
  }
  CartanConstruction g2 = cartan_construction(kG2);
  YDModuleData V = build_yd_module(g2.datum);
  CHECK(yd_module_descends(V, g2.datum.base));
  CHECK(braiding_of_yd(V) == g2.datum.diagram);
}

TEST_CASE("genuine flag is nonzeroness of the constants") {
  CHECK_FALSE(genuine_flag(zero_spec(make_group({3, 3}))));
  CocycleSpec s = zero_spec(make_group({3, 3}));
  s.a_ij[0] = 1;
  CHECK(genuine_flag(s));
}
