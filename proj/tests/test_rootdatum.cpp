#include "doctest.h"

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pma/rootdatum.hpp"

using namespace pma;

namespace {

// Running example: three degrees over Z_3 x Z_3 (lift Z_9 x Z_9) with
// h_1 = g_1, h_2 = g_2, h_3 = g_1 g_2.  Admits several right inverses T,
// all forcing the same constants a_1 = a_2 = 1, a_12 = 2.
const IntMat kS{{1, 0}, {0, 1}, {1, 1}};
const IntMat kX{{1, 8, 0}, {0, 1, 1}};
const IntMat kT{{1, 0, 0}, {0, 1, 0}};
const IntMat kT2{{0, 8, 1}, {0, 1, 0}};

RootDatum running_datum() {
  FinAbGroup base = make_group({3, 3});
  return make_root_datum(base, structure_diagram(base, kS, kX), kS, kX);
}

}  // namespace

TEST_CASE("diagram accessors and construction guards") {
  Phase q3 = make_phase(1, 3);
  Phase z;
  GeneralizedDynkinDiagram D = diagram_from_constants(
      {q3, q3, make_phase(1, 9)},
      {{z, make_phase(2, 3), z}, {make_phase(2, 3), z, z}, {z, z, z}});
  CHECK(D.rank() == 3);
  CHECK(D.tilde(0, 1) == make_phase(2, 3));
  CHECK(D.tilde(1, 0) == make_phase(2, 3));
  CHECK(D.edge(0, 1));
  CHECK_FALSE(D.edge(0, 2));
  CHECK_FALSE(D.edge(1, 2));
  CHECK_THROWS_AS(D.tilde(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(D.tilde(0, 3), std::invalid_argument);

  // asymmetric labels, nonzero diagonal, ragged shape
  CHECK_THROWS_AS(diagram_from_constants({q3, q3}, {{z, q3}, {z, z}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(diagram_from_constants({q3, q3}, {{q3, z}, {z, z}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(diagram_from_constants({q3, q3}, {{z, z}}), std::invalid_argument);
}

TEST_CASE("structure constants of the running datum") {
  FinAbGroup base = make_group({3, 3});
  GeneralizedDynkinDiagram D = structure_diagram(base, kS, kX);
  CHECK(D.rank() == 3);
  CHECK(D.q_ii[0] == make_phase(1, 9));
  CHECK(D.q_ii[1] == make_phase(1, 9));
  CHECK(D.q_ii[2] == make_phase(1, 9));
  CHECK(D.tilde(0, 1) == make_phase(8, 9));
  CHECK(D.tilde(0, 2) == make_phase(1, 9));
  CHECK(D.tilde(1, 2) == make_phase(1, 9));  // 1 + 8 + 1 == 10 wraps to 1

  CHECK_THROWS_AS(structure_diagram(base, IntMat{{1}}, kX), std::invalid_argument);
}

TEST_CASE("solve_T finds canonical right inverses") {
  FinAbGroup z33 = make_group({3, 3});
  IntMat I2{{1, 0}, {0, 1}};
  CHECK(solve_T(I2, z33) == IntMat{{1, 0}, {0, 1}});

  // 3*3 == 9 == 1 mod 4
  CHECK(solve_T(IntMat{{3}}, make_group({2})) == IntMat{{3}});

  // a zero row cannot reach the second generator
  CHECK_FALSE(solve_T(IntMat{{1, 0}, {0, 0}}, z33).has_value());

  // the running degrees generate; T*S == I mod 9 for the solved T
  auto T = solve_T(kS, z33);
  REQUIRE(T.has_value());
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      std::int64_t acc = 0;
      for (std::size_t l = 0; l < 3; ++l) acc += (*T)[i][l] * kS[l][j];
      CHECK(acc % 9 == (i == j ? 1 : 0));
    }
}

TEST_CASE("congruence families and the forced constants") {
  FinAbGroup z33 = make_group({3, 3});

  // both right inverses force the same constants
  for (const IntMat& T : {kT, kT2}) {
    CongruenceReport rep = check_congruences(kX, T, z33);
    CHECK(rep.holds);
    CHECK_FALSE(rep.violation.has_value());
    CHECK(rep.a_i == std::vector<std::int64_t>{1, 1});
    CHECK(rep.a_il == std::vector<std::int64_t>{2});
    CHECK(rep.raw_consistent);
  }

  // zero X forces zero constants
  CongruenceReport zero = check_congruences(IntMat{{0, 0}, {0, 0}}, IntMat{{1, 0}, {0, 1}},
                                            make_group({2, 2}));
  CHECK(zero.holds);
  CHECK(zero.a_i == std::vector<std::int64_t>{0, 0});
  CHECK(zero.a_il == std::vector<std::int64_t>{0});

  // x_21 t_11 == 1 is not 0 mod 2: descent family fails at (1,0)
  CongruenceReport bad = check_congruences(IntMat{{1, 0}, {1, 1}}, IntMat{{1, 0}, {0, 1}},
                                           make_group({2, 2}));
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.violation.has_value());
  CHECK(*bad.violation == std::pair<std::size_t, std::size_t>(1, 0));

  CHECK_THROWS_AS(check_congruences(kX, kT, make_group({4, 2})), std::invalid_argument);
}

TEST_CASE("verify_root_datum on the running datum and its corruptions") {
  RootDatum D = running_datum();
  CHECK(D.T == kT2);  // the solver's canonical minimal solution
  RootDatumReport rep = verify_root_datum(D);
  CHECK(rep.shapes);
  CHECK(rep.entry_bounds);
  CHECK(rep.ts_identity);
  CHECK(rep.diagram_match);
  CHECK(rep.congruences);
  CHECK(rep.pass());

  // perturb one x entry but keep the original diagram
  RootDatum wrong = D;
  wrong.X[0][0] = 2;
  RootDatumReport wrep = verify_root_datum(wrong);
  CHECK_FALSE(wrep.diagram_match);
  REQUIRE(wrep.diagram_violation.has_value());
  CHECK(*wrep.diagram_violation == std::pair<std::size_t, std::size_t>(0, 0));
  CHECK_FALSE(wrep.pass());

  // out-of-range entry trips the bound check only
  RootDatum wide = D;
  wide.X[0][0] = 9;
  wide.diagram = structure_diagram(wide.base, wide.S, wide.X);
  RootDatumReport brep = verify_root_datum(wide);
  CHECK_FALSE(brep.entry_bounds);
  CHECK(brep.diagram_match);

  // flat datum: identity degrees, zero action
  FinAbGroup z33 = make_group({3, 3});
  IntMat I2{{1, 0}, {0, 1}};
  IntMat X0{{0, 0}, {0, 0}};
  RootDatum flat = make_root_datum(z33, structure_diagram(z33, I2, X0), I2, X0);
  CHECK(verify_root_datum(flat).pass());

  CHECK_THROWS_AS(make_root_datum(make_group({4, 2}), D.diagram, kS, kX),
                  std::invalid_argument);
  // degrees that do not generate
  CHECK_THROWS_AS(make_root_datum(z33, structure_diagram(z33, IntMat{{1, 0}, {0, 0}}, X0),
                                  IntMat{{1, 0}, {0, 0}}, X0),
                  std::invalid_argument);
}

TEST_CASE("determine_a forces the unique constants") {
  RootDatum D = running_datum();
  auto a = determine_a(D);
  REQUIRE(a.has_value());
  CHECK(a->a_l == std::vector<std::int64_t>{1, 1});
  CHECK(a->a_ij == std::vector<std::int64_t>{2});
  CHECK(a->a_rst.empty());

  // swapping in the other right inverse leaves the constants alone
  RootDatum D2 = D;
  D2.T = kT;
  CHECK(verify_root_datum(D2).pass());
  CHECK(determine_a(D2) == a);

  FinAbGroup z33 = make_group({3, 3});
  IntMat I2{{1, 0}, {0, 1}};
  RootDatum flat = make_root_datum(z33, structure_diagram(z33, I2, IntMat{{0, 0}, {0, 0}}),
                                   I2, IntMat{{0, 0}, {0, 0}});
  CHECK(determine_a(flat) == zero_spec(z33));

  // failed descent family: no constants exist
  FinAbGroup z22 = make_group({2, 2});
  IntMat Xbad{{1, 0}, {1, 1}};
  RootDatum bad = make_root_datum(z22, structure_diagram(z22, I2, Xbad), I2, Xbad);
  CHECK_FALSE(determine_a(bad).has_value());
}

TEST_CASE("yd module of the running datum descends to the base") {
  RootDatum D = running_datum();
  YDModuleData V = build_yd_module(D);
  CHECK(V.group.moduli == std::vector<std::int64_t>{9, 9});
  REQUIRE(V.degrees.size() == 3);
  for (std::size_t j = 0; j < 3; ++j) CHECK(V.degrees[j].exp == kS[j]);

  // degrees stay in base range here, so the 2-cochain corrections vanish
  // and the action is the bare character
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(V.action[i][j] == make_phase(kX[i][j], 9));

  CHECK(V.twist == *determine_a(D));
  CHECK(yd_module_descends(V, D.base));

  // descent is a theorem for data passing the congruences, so corrupt the
  // stored action to see the check actually bite
  YDModuleData broken = V;
  broken.action[0][0] = make_phase(2, 9);
  CHECK_FALSE(yd_module_descends(broken, D.base));

  CHECK_THROWS_AS(yd_module_descends(V, make_group({3})), std::invalid_argument);

  FinAbGroup z22 = make_group({2, 2});
  IntMat I2{{1, 0}, {0, 1}};
  IntMat Xbad{{1, 0}, {1, 1}};
  RootDatum bad = make_root_datum(z22, structure_diagram(z22, I2, Xbad), I2, Xbad);
  CHECK_THROWS_AS(build_yd_module(bad), std::domain_error);
}

TEST_CASE("trivial datum gives trivial module") {
  FinAbGroup z33 = make_group({3, 3});
  IntMat I2{{1, 0}, {0, 1}};
  IntMat X0{{0, 0}, {0, 0}};
  YDModuleData V = build_yd_module(
      make_root_datum(z33, structure_diagram(z33, I2, X0), I2, X0));
  for (std::size_t j = 0; j < 2; ++j) {
    std::vector<std::int64_t> e(2, 0);
    e[j] = 1;
    CHECK(V.degrees[j].exp == e);
  }
  for (const auto& row : V.action)
    for (const Phase& p : row) CHECK(p.is_zero());
  CHECK(yd_module_descends(V, z33));
}

TEST_CASE("braiding reads back the diagram") {
  RootDatum D = running_datum();
  YDModuleData V = build_yd_module(D);
  GeneralizedDynkinDiagram back = braiding_of_yd(V);
  CHECK(back == D.diagram);

  FinAbGroup z33 = make_group({3, 3});
  IntMat I2{{1, 0}, {0, 1}};
  IntMat X0{{0, 0}, {0, 0}};
  GeneralizedDynkinDiagram flat = braiding_of_yd(build_yd_module(
      make_root_datum(z33, structure_diagram(z33, I2, X0), I2, X0)));
  for (const Phase& q : flat.q_ii) CHECK(q.is_zero());
  for (const Phase& q : flat.q_tilde) CHECK(q.is_zero());

  // identity degrees with a nonzero X round-trip as well
  IntMat X1{{1, 2}, {0, 1}};
  RootDatum D1 = make_root_datum(z33, structure_diagram(z33, I2, X1), I2, X1);
  YDModuleData V1 = build_yd_module(D1);
  CHECK(braiding_of_yd(V1) == D1.diagram);
  CHECK(yd_module_descends(V1, z33));
}

TEST_CASE("support group of the degrees") {
  RootDatum D = running_datum();
  SupportGroup full = support_group(build_yd_module(D));
  CHECK(full.is_full);
  CHECK(full.index == 1);

  // single degree g^2 inside Z_4: index-2 subgroup
  YDModuleData V;
  V.group = make_group({4});
  V.degrees = {make_elem(V.group, {2})};
  V.action = {{Phase{}}};
  V.twist = zero_spec(make_group({2}));
  SupportGroup half = support_group(V);
  CHECK_FALSE(half.is_full);
  CHECK(half.index == 2);
  CHECK(half.basis == IntMat{{2}});
}

TEST_CASE("twist equivalence search") {
  Phase q5 = make_phase(1, 5);
  Phase q52 = make_phase(2, 5);
  Phase q53 = make_phase(3, 5);
  Phase z;

  GeneralizedDynkinDiagram A = diagram_from_constants({q5, q52}, {{z, q53}, {q53, z}});
  auto self = twist_equivalent(A, A);
  REQUIRE(self.has_value());
  CHECK(*self == std::vector<std::size_t>{0, 1});

  GeneralizedDynkinDiagram B = diagram_from_constants({q52, q5}, {{z, q53}, {q53, z}});
  auto swapped = twist_equivalent(A, B);
  REQUIRE(swapped.has_value());
  CHECK(*swapped == std::vector<std::size_t>{1, 0});

  GeneralizedDynkinDiagram C = diagram_from_constants({q52, q52}, {{z, q53}, {q53, z}});
  CHECK_FALSE(twist_equivalent(A, C).has_value());

  GeneralizedDynkinDiagram one = diagram_from_constants({q5}, {{z}});
  CHECK_FALSE(twist_equivalent(A, one).has_value());

  GeneralizedDynkinDiagram big;
  big.q_ii.assign(9, q5);
  big.q_tilde.assign(pair_count(9), z);
  CHECK_THROWS_AS(twist_equivalent(big, big), std::invalid_argument);
}
