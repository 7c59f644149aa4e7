#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pma/cocycle.hpp"
#include "pma/group.hpp"
#include "pma/phase.hpp"
#include "pma/resolution.hpp"

namespace pma {

using IntMat = std::vector<std::vector<std::int64_t>>;

// Vertex labels q_ii plus symmetric edge labels q~_ij, stored flat in
// pair_index order.  An edge is present exactly when its label is nonzero.
struct GeneralizedDynkinDiagram {
  std::vector<Phase> q_ii;
  std::vector<Phase> q_tilde;

  std::size_t rank() const { return q_ii.size(); }
  const Phase& tilde(std::size_t i, std::size_t j) const;
  bool edge(std::size_t i, std::size_t j) const { return !tilde(i, j).is_zero(); }

  friend bool operator==(const GeneralizedDynkinDiagram&,
                         const GeneralizedDynkinDiagram&) = default;
};

// Builds a diagram from a vertex list and a full symmetric matrix of edge
// labels (diagonal entries must be zero phases).  Throws invalid_argument
// on shape mismatch, asymmetry, or a nonzero diagonal.
GeneralizedDynkinDiagram diagram_from_constants(
    const std::vector<Phase>& q_ii, const std::vector<std::vector<Phase>>& q_tilde);

// Parameter data for a diagram realized over the squared lift of base:
// with M_k the lifted moduli, the degrees are h_i = prod_k g_k^{s_ik}
// (S is m x n, 0 <= s_ik < M_k) and the action exponents are X (n x m,
// 0 <= x_kj < M_k).  T (n x m) solves T*S == I with row i taken mod M_i;
// it is solved once and cached.  The diagram must match the structure
// constants
//
//   q_ii    = sum_k s_ik x_ki / M_k,
//   q~_ij   = sum_k (s_ik x_kj + s_jk x_ki) / M_k.
struct RootDatum {
  FinAbGroup base;
  GeneralizedDynkinDiagram diagram;
  IntMat S;
  IntMat X;
  IntMat T;
};

// The structure constants determined by (S, X) over base's squared lift.
GeneralizedDynkinDiagram structure_diagram(const FinAbGroup& base, const IntMat& S,
                                           const IntMat& X);

// Row i of T solves sum_l t_il s_lj == delta_ij mod M_i for every j; each
// row is the canonical minimal solution of its congruence system.  Returns
// nullopt when some row has no solution, i.e. the degrees do not generate.
std::optional<IntMat> solve_T(const IntMat& S, const FinAbGroup& base);

// Validates shapes, requires base in invariant-factor form, solves and
// caches T.  Throws invalid_argument on shape mismatch, a base without the
// divisibility chain, or an S whose degrees do not generate the lift.
RootDatum make_root_datum(const FinAbGroup& base, const GeneralizedDynkinDiagram& diagram,
                          const IntMat& S, const IntMat& X);

// The three congruence families tying (X, T) to the cocycle constants.
// With m_i the base moduli (ascending divisibility required) and row dots
// r(i,l) = sum_j x_ij t_lj:
//
//   descent:   r(i,l) == 0 mod m_i for l < i   (pass/fail, first violation)
//   diagonal:  a_i  == r(i,i) mod m_i          (forced value)
//   pairs:     a_il == (m_l/m_i) r(i,l) mod m_l for i < l   (forced value)
//
// raw_consistent cross-checks the pair family in its two-modulus form
// r(i,l)*m_l == m_i*a_il mod m_i*m_l, which is equivalent under the
// divisibility chain and should never disagree.
struct CongruenceReport {
  bool holds = false;
  std::optional<std::pair<std::size_t, std::size_t>> violation;
  std::vector<std::int64_t> a_i;
  std::vector<std::int64_t> a_il;
  bool raw_consistent = false;
};

CongruenceReport check_congruences(const IntMat& X, const IntMat& T,
                                   const FinAbGroup& base);

// The unique candidate constants for the datum: a_i and a_il forced by the
// congruences, all triple constants zero.  nullopt exactly when the descent
// family fails.  Pair values are canonical mod m_l, so they may exceed the
// enumeration bound gcd(m_i, m_l); the cocycle formula accepts them as is.
std::optional<CocycleSpec> determine_a(const RootDatum& D);

struct RootDatumReport {
  bool shapes = false;
  bool entry_bounds = false;
  bool ts_identity = false;
  bool diagram_match = false;
  std::optional<std::pair<std::size_t, std::size_t>> diagram_violation;
  bool congruences = false;
  std::optional<std::pair<std::size_t, std::size_t>> congruence_violation;

  bool pass() const {
    return shapes && entry_bounds && ts_identity && diagram_match && congruences;
  }
};

RootDatumReport verify_root_datum(const RootDatum& D);

// Diagonal module data over the lifted group: degree h_j and action phases
// p_ij, meaning generator g_i acts on the j-th basis vector by p_ij.  twist
// holds the abelian constants (over the base group) whose 2-cochain was
// folded into the action; the descent check needs them because the folded
// correction is not linear in the acting element.
struct YDModuleData {
  FinAbGroup group;
  std::vector<GroupElem> degrees;
  std::vector<std::vector<Phase>> action;
  CocycleSpec twist;
};

// Degrees h_j = prod_k g_k^{s_jk}; action p_ij = x_ij / M_i
// + J_a(g_i, h_j) - J_a(h_j, g_i) with a = determine_a(D), recorded in
// twist.  Throws domain_error when the descent congruences fail and no
// constants exist.
YDModuleData build_yd_module(const RootDatum& D);

// Whether g_i^{m_i} acts trivially for every base modulus m_i, the
// criterion for the module to live over the base group.  The action of a
// power is not m_i * p_ij: the folded 2-cochain correction must be
// re-evaluated at g_i^{m_i}, so the check peels the generator-level
// correction off p_ij, scales the bare character part, and applies the
// correction at the power.  On data whose constants solve the congruence
// families this always holds.
bool yd_module_descends(const YDModuleData& V, const FinAbGroup& base);

// Reads the braiding matrix back off the module: q_ij = sum_k s_ik p_kj
// with s_ik the exponents of degree h_i, then q_ii on the diagonal and
// q~_ij = q_ij + q_ji on the edges.
GeneralizedDynkinDiagram braiding_of_yd(const YDModuleData& V);

// Subgroup generated by the degrees, as the column Hermite form of their
// exponent lattice (which always contains diag(moduli)).  index is the
// subgroup's index in the ambient group; is_full iff index == 1.
struct SupportGroup {
  IntMat basis;
  std::int64_t index = 0;
  bool is_full = false;
};

SupportGroup support_group(const YDModuleData& V);

// Lexicographically first vertex permutation tau with
// q'_{tau(i)tau(i)} == q_ii and q~'_{tau(i)tau(j)} == q~_ij, or nullopt.
// Ranks above the search bound of 8 throw invalid_argument; unequal ranks
// are simply not equivalent.
std::optional<std::vector<std::size_t>> twist_equivalent(
    const GeneralizedDynkinDiagram& D1, const GeneralizedDynkinDiagram& D2);

}  // namespace pma
