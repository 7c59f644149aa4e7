#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pma {

// Z_{m_1} x ... x Z_{m_n}, written multiplicatively with fixed generators
// g_1..g_n of orders m_1..m_n. invariant_factor records m_i | m_{i+1}; the
// root-datum and construction layers require that form and reject otherwise.
struct FinAbGroup {
  std::vector<std::int64_t> moduli;
  bool invariant_factor = false;

  std::size_t rank() const { return moduli.size(); }
  std::int64_t order() const;

  friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;
};

// moduli must all be >= 1; computes the invariant_factor flag.
FinAbGroup make_group(std::vector<std::int64_t> moduli);

// Canonical exponent vector: 0 <= exp[k] < m_k. g_1^{e_1}...g_n^{e_n}.
struct GroupElem {
  std::vector<std::int64_t> exp;

  friend bool operator==(const GroupElem&, const GroupElem&) = default;
};

GroupElem identity(const FinAbGroup& G);
// Reduces arbitrary integer exponents into canonical range.
GroupElem make_elem(const FinAbGroup& G, std::vector<std::int64_t> exp);
GroupElem elem_mul(const FinAbGroup& G, const GroupElem& a, const GroupElem& b);
GroupElem elem_inv(const FinAbGroup& G, const GroupElem& a);
GroupElem elem_pow(const FinAbGroup& G, const GroupElem& a, std::int64_t k);
bool is_identity(const GroupElem& a);

// Mixed-radix enumeration; the last coordinate varies fastest.
// elem_at(G, elem_index(G, a)) == a for 0 <= index < G.order().
std::int64_t elem_index(const FinAbGroup& G, const GroupElem& a);
GroupElem elem_at(const FinAbGroup& G, std::int64_t index);

std::string to_string(const GroupElem& a);

// Isomorphism onto the invariant-factor presentation (d_1 | d_2 | ... | d_k),
// obtained by splitting each modulus into prime powers and regrouping by CRT.
// forward/backward are mutually inverse group isomorphisms.
struct InvariantFactorIso {
  FinAbGroup source;
  FinAbGroup target;          // target.invariant_factor is always true

  GroupElem forward(const GroupElem& a) const;   // source -> target
  GroupElem backward(const GroupElem& b) const;  // target -> source

  // slot (p^a) routed from source factor i to target factor j.
  struct Slot {
    std::int64_t prime_power;
    std::size_t source_factor;
    std::size_t target_factor;
  };
  std::vector<Slot> slots;
};

InvariantFactorIso invariant_factor_form(const FinAbGroup& G);

}  // namespace pma
