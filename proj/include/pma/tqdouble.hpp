#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pma/cocycle.hpp"

namespace pma {

// Basis vector coefficient * e(delta_part) (x) group_part of the twisted
// double of (kG, phi).
struct DoubleElem {
  GroupElem delta_part;
  GroupElem group_part;
  Phase coefficient;

  friend bool operator==(const DoubleElem&, const DoubleElem&) = default;
};

// theta_g(x,y) = phi(g,x,y) + phi(x,y,(xy)^-1 g (xy)) - phi(x, x^-1 g x, y).
// Written with the conjugations even though the exposed groups are abelian,
// so the collapse to phi_tilde is a tested consequence.
Phase theta(const Cochain3& phi, const GroupElem& g, const GroupElem& x, const GroupElem& y);

// gamma_g(x,y) = phi(x,y,g) + phi(g, g^-1 x g, g^-1 y g) - phi(x, g, g^-1 y g).
Phase gamma(const Cochain3& phi, const GroupElem& g, const GroupElem& x, const GroupElem& y);

// (e(g) (x) x)(e(h) (x) y) = theta_g(x,y) delta_{g^x, h} e(g) (x) xy.
// nullopt is the zero product (the Kronecker delta fired).
std::optional<DoubleElem> double_multiply(const Cochain3& phi, const DoubleElem& u,
                                          const DoubleElem& v);

// The double of Phi_a is commutative iff every a_rst vanishes.
bool is_abelian_spec(const CocycleSpec& a);

// Commutativity of the double, decided by scanning theta_g(x,y) =
// theta_g(y,x) over all |G|^3 triples.
bool is_abelian_bruteforce(const Cochain3& phi, std::int64_t budget = default_scan_budget);

// (uv)w = u(vw) over all |G|^6 basis triples, zero products included.
bool double_is_associative(const Cochain3& phi, std::int64_t budget = default_scan_budget);

// Pass/fail per quasi-bialgebra axiom of (kG, phi) with alpha = counit,
// beta(g) = -phi(g, g^-1, g), S(g) = g^-1, evaluated on group-likes.
// `where` holds the first failing tuple.
struct AxiomResult {
  bool pass = true;
  std::vector<GroupElem> where;
};

struct MajidReport {
  AxiomResult quasi_assoc;  // a(bc) and (ab)c agree against the associator
  AxiomResult unit;         // 1a = a = a1
  AxiomResult pentagon;     // the 3-cocycle identity
  AxiomResult middle_unit;  // phi(a, 1, b) = 1
  AxiomResult antipode;     // S(g) g = 1 = g S(g) weighted by alpha, beta
  AxiomResult zigzag;       // the two phi/beta cancellation identities

  bool all_pass() const {
    return quasi_assoc.pass && unit.pass && pentagon.pass && middle_unit.pass &&
           antipode.pass && zigzag.pass;
  }
};

MajidReport majid_axiom_check(const Cochain3& phi, std::int64_t budget = default_scan_budget);
MajidReport majid_axiom_check(const CocycleSpec& a, std::int64_t budget = default_scan_budget);

}  // namespace pma
