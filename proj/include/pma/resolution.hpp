#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "pma/cocycle.hpp"
#include "pma/group.hpp"
#include "pma/phase.hpp"

namespace pma {

// Squared-group cover of a finite abelian group: each modulus m is replaced
// by m^2.  project reduces exponents componentwise, section embeds canonical
// exponents unchanged, so project(section(b)) == b for every base element.
struct GroupLift {
  FinAbGroup base;
  FinAbGroup lifted;

  GroupElem project(const GroupElem& g) const;
  GroupElem section(const GroupElem& b) const;
};

GroupLift lift_group(const FinAbGroup& base);

// phi composed with project in all three slots; a cochain on lift.lifted.
Cochain3 pullback_cochain(const Cochain3& phi, const GroupLift& lift);

// The resolving 2-cochain on the squared group.  With x, y the canonical
// exponents of g, h and y' = y mod m (base moduli m):
//
//   J(g, h) = sum_l  a_l x_l (y_l - y_l') / m_l^2
//           + sum_{s<t} a_st x_t (y_s - y_s') / (m_s m_t)   (mod 1).
//
// Only defined for specs with no triple constants; throws invalid_argument
// otherwise.  The value depends on a_l only mod m_l and on a_st only mod
// m_t, and is additive in g for fixed h.
Phase j_eval(const CocycleSpec& spec, const GroupLift& lift,
             const GroupElem& g, const GroupElem& h);

// First lifted triple where dJ of j_spec differs from the pullback of Phi
// of phi_spec, or nullopt if they agree everywhere.  dJ is taken in the
// form the identity is proved in: the formula extends to arbitrary
// exponent tuples, and the inner products stay as unreduced sums,
//
//   dJ(x, y, z) = J(y, z) + J(x, y + z) - J(x + y, z) - J(x, y).
//
// Reducing x + y mod the lifted moduli instead would shift the s<t terms by
// a_st x_t m_s / m_t, which is not an integer once the moduli differ, so
// the exponent-tuple reading is the one that descends.  Both specs must
// live on the same group and j_spec must have no triple constants.  Throws
// BudgetExceeded when |lifted|^3 > budget.
std::optional<std::array<GroupElem, 3>> resolution_counterexample(
    const CocycleSpec& j_spec, const CocycleSpec& phi_spec,
    std::int64_t budget = default_scan_budget);

// True iff dJ_a equals the pullback of Phi_a at every canonical triple of
// the squared group (see resolution_counterexample for the differential
// convention) and the pullback is a coboundary of the lifted group, which
// is decided exactly through the generator complex.  Requires a spec with
// no triple constants (throws otherwise).
bool verify_resolution(const CocycleSpec& spec,
                       std::int64_t budget = default_scan_budget);

// For a spec with some nonzero triple constant (throws otherwise): true iff
// the pullback of Phi_a to the squared group is still not a coboundary
// there.  Decided through the generator complex, where the pullback keeps
// f_rst = a_rst / gcd(m_r, m_s, m_t) != 0.
bool obstruction_check(const CocycleSpec& spec);

}  // namespace pma
