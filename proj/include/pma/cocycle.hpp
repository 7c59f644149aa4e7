#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pma/group.hpp"
#include "pma/phase.hpp"

namespace pma {

// Exhaustive scans refuse to start when the tuple count exceeds the caller's
// budget; they never fall back to sampling.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lexicographic packing of strictly increasing pairs (i<j) and triples
// (i<j<k) over factor indices 0..n-1.
std::size_t pair_count(std::size_t n);
std::size_t triple_count(std::size_t n);
std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j);
std::size_t triple_index(std::size_t n, std::size_t i, std::size_t j, std::size_t k);

// Parameter block of the closed-form representative 3-cocycle on
// Z_{m_1} x ... x Z_{m_n}: one a_l per factor, one a_ij per pair, one a_rst
// per triple, packed lexicographically. Canonical ranges are 0 <= a_l < m_l,
// 0 <= a_ij < gcd(m_i,m_j), 0 <= a_rst < gcd(m_r,m_s,m_t); the formula only
// sees a_l mod m_l, a_ij mod m_j, a_rst mod gcd, so wider values (as
// produced by the root-datum solver) still define valid cocycles, but only
// canonical blocks are enumerated and returned by classify.
struct CocycleSpec {
  FinAbGroup group;
  std::vector<std::int64_t> a_l;
  std::vector<std::int64_t> a_ij;
  std::vector<std::int64_t> a_rst;

  friend bool operator==(const CocycleSpec&, const CocycleSpec&) = default;
};

CocycleSpec zero_spec(const FinAbGroup& G);
bool is_canonical(const CocycleSpec& a);
bool is_zero_spec(const CocycleSpec& a);

// Number of canonical blocks; equals the number of cohomology classes.
std::int64_t spec_class_count(const FinAbGroup& G);

// Mixed-radix enumeration of the canonical blocks, a_rst digits fastest;
// spec_index inverts it. 0 <= index < spec_class_count(G).
CocycleSpec spec_at(const FinAbGroup& G, std::int64_t index);
std::int64_t spec_index(const CocycleSpec& a);

// The representative formula. x=(i), y=(j), z=(k) in canonical exponents:
//   sum_l   a_l/m_l * i_l * [(j_l + k_l)/m_l]
// + sum_s<t a_st/m_t * i_t * [(j_s + k_s)/m_s]
// - sum_r<s<t a_rst/gcd(m_r,m_s,m_t) * k_r * j_s * i_t
// with [.] integer floor.
Phase phi_eval(const CocycleSpec& a, const GroupElem& x, const GroupElem& y,
               const GroupElem& z);

// Normalized cochains carried as total evaluators so closed formulas,
// pullbacks and explicit tables share one interface.
struct Cochain2 {
  FinAbGroup group;
  std::function<Phase(const GroupElem&, const GroupElem&)> eval;
};

struct Cochain3 {
  FinAbGroup group;
  std::function<Phase(const GroupElem&, const GroupElem&, const GroupElem&)> eval;
};

Cochain3 phi_cochain(const CocycleSpec& a);
Cochain3 cochain3_add(const Cochain3& f, const Cochain3& g);
Cochain3 cochain3_sub(const Cochain3& f, const Cochain3& g);

// dJ(a,b,c) = J(b,c) + J(a,bc) - J(ab,c) - J(a,b).
Cochain3 differential3(const Cochain2& J);

inline constexpr std::int64_t default_scan_budget = std::int64_t{1} << 28;

// Exhaustive pentagon + normalization check over all |G|^4 quadruples.
// Throws BudgetExceeded instead of sampling when |G|^4 > budget.
bool is_cocycle(const Cochain3& phi, std::int64_t budget = default_scan_budget);

// Values of a 3-cochain on the generator complex: f_rrr per factor, f_rrs
// and f_rss per pair r<s, f_rst per triple r<s<t, packed lexicographically.
struct KCochain3 {
  std::vector<Phase> f_rrr;
  std::vector<Phase> f_rrs;
  std::vector<Phase> f_rss;
  std::vector<Phase> f_rst;

  friend bool operator==(const KCochain3&, const KCochain3&) = default;
};

// Pulls phi back along the chain map into the generator complex:
//   f_rrr = sum_{l<m_r} phi(g_r, g_r^l, g_r)
//   f_rrs = sum_{l<m_r} (phi(g_r^l,g_r,g_s) - phi(g_r^l,g_s,g_r) + phi(g_s,g_r^l,g_r))
//   f_rss = sum_{l<m_s} (phi(g_r,g_s^l,g_s) - phi(g_s^l,g_r,g_s) + phi(g_s^l,g_s,g_r))
//   f_rst = phi(g_r,g_s,g_t) - phi(g_s,g_r,g_t) - phi(g_r,g_t,g_s)
//         + phi(g_t,g_r,g_s) + phi(g_s,g_t,g_r) - phi(g_t,g_s,g_r)
// Linear in phi.
KCochain3 pushdown_F3(const Cochain3& phi);

// Cocycle test on the generator complex: m_r f_rrr = 0,
// m_r f_rss + m_s f_rrs = 0, m_r f_rst = m_s f_rst = m_t f_rst = 0.
bool k_is_cocycle(const KCochain3& f, const FinAbGroup& G);

// Coboundary test on the generator complex. A coboundary needs f_lll = 0,
// f_rst = 0 and, per pair i<j, some gamma with m_i gamma = f_iij and
// m_j gamma = -f_ijj; returns those gammas (packed like a_ij) as the
// witness. Requires k_is_cocycle(f, G).
std::optional<std::vector<Phase>> k_is_coboundary(const KCochain3& f,
                                                  const FinAbGroup& G);

// Coboundary decision for a full cocycle via its pushdown; the witness is
// the generator-complex one. Requires is_cocycle(phi); the cheap
// k_is_cocycle consequence is verified and violations throw.
std::optional<std::vector<Phase>> is_coboundary(const Cochain3& phi);

// The unique canonical block a with phi - Phi_a a coboundary. The closed
// form reads a off pushdown_F3(phi); the result is always re-verified by
// is_coboundary and, failing that, found by exhaustive search. Throws
// std::domain_error when no block matches (phi was not a cocycle).
CocycleSpec classify(const Cochain3& phi);

// (e,f) |-> phi(g,e,f) + phi(e,f,g) - phi(e,g,f).
Cochain2 phi_tilde(const Cochain3& phi, const GroupElem& g);

}  // namespace pma
