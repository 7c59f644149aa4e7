#include "pma/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace pma {

namespace {

void require_same_rank(const FinAbGroup& G, const GroupElem& a) {
  if (a.exp.size() != G.rank()) throw std::invalid_argument("element rank does not match group");
}

// Extended gcd: returns g = gcd(a,b) and x with a*x ≡ g (mod b), b > 0.
std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = m, r1 = ((a % m) + m) % m, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1; r0 = r1; r1 = r2;
    std::int64_t s2 = s0 - q * s1; s0 = s1; s1 = s2;
  }
  if (r0 != 1) throw std::domain_error("inverse of a non-unit");
  return ((s0 % m) + m) % m;
}

}  // namespace

std::int64_t FinAbGroup::order() const {
  __int128 o = 1;
  for (auto m : moduli) {
    o *= m;
    if (o > INT64_MAX) throw std::overflow_error("group order exceeds 64 bits");
  }
  return static_cast<std::int64_t>(o);
}

FinAbGroup make_group(std::vector<std::int64_t> moduli) {
  for (auto m : moduli)
    if (m < 1) throw std::invalid_argument("group modulus must be positive");
  bool inv = true;
  for (std::size_t i = 0; i + 1 < moduli.size(); ++i)
    if (moduli[i + 1] % moduli[i] != 0) { inv = false; break; }
  FinAbGroup G;
  G.moduli = std::move(moduli);
  G.invariant_factor = inv;
  return G;
}

GroupElem identity(const FinAbGroup& G) {
  return GroupElem{std::vector<std::int64_t>(G.rank(), 0)};
}

GroupElem make_elem(const FinAbGroup& G, std::vector<std::int64_t> exp) {
  if (exp.size() != G.rank()) throw std::invalid_argument("exponent rank does not match group");
  for (std::size_t k = 0; k < exp.size(); ++k) {
    exp[k] %= G.moduli[k];
    if (exp[k] < 0) exp[k] += G.moduli[k];
  }
  return GroupElem{std::move(exp)};
}

GroupElem elem_mul(const FinAbGroup& G, const GroupElem& a, const GroupElem& b) {
  require_same_rank(G, a);
  require_same_rank(G, b);
  GroupElem c = a;
  for (std::size_t k = 0; k < c.exp.size(); ++k) {
    c.exp[k] += b.exp[k];
    if (c.exp[k] >= G.moduli[k]) c.exp[k] -= G.moduli[k];
  }
  return c;
}

GroupElem elem_inv(const FinAbGroup& G, const GroupElem& a) {
  require_same_rank(G, a);
  GroupElem c = a;
  for (std::size_t k = 0; k < c.exp.size(); ++k)
    if (c.exp[k] != 0) c.exp[k] = G.moduli[k] - c.exp[k];
  return c;
}

GroupElem elem_pow(const FinAbGroup& G, const GroupElem& a, std::int64_t k) {
  require_same_rank(G, a);
  GroupElem c = identity(G);
  for (std::size_t i = 0; i < c.exp.size(); ++i) {
    __int128 e = __int128(a.exp[i]) * k % G.moduli[i];
    if (e < 0) e += G.moduli[i];
    c.exp[i] = static_cast<std::int64_t>(e);
  }
  return c;
}

bool is_identity(const GroupElem& a) {
  return std::all_of(a.exp.begin(), a.exp.end(), [](std::int64_t e) { return e == 0; });
}

std::int64_t elem_index(const FinAbGroup& G, const GroupElem& a) {
  require_same_rank(G, a);
  std::int64_t idx = 0;
  for (std::size_t k = 0; k < G.rank(); ++k) idx = idx * G.moduli[k] + a.exp[k];
  return idx;
}

GroupElem elem_at(const FinAbGroup& G, std::int64_t index) {
  GroupElem a = identity(G);
  for (std::size_t k = G.rank(); k-- > 0;) {
    a.exp[k] = index % G.moduli[k];
    index /= G.moduli[k];
  }
  return a;
}

std::string to_string(const GroupElem& a) {
  std::string s = "[";
  for (std::size_t k = 0; k < a.exp.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(a.exp[k]);
  }
  return s + "]";
}

InvariantFactorIso invariant_factor_form(const FinAbGroup& G) {
  // Split every modulus into prime powers, then deal the largest power of
  // each prime into the largest invariant factor, the second largest into
  // the next, and so on. CRT recombines the slots on both sides.
  struct PP { std::int64_t q; std::size_t src; };  // q = p^a
  std::map<std::int64_t, std::vector<PP>> by_prime;
  for (std::size_t i = 0; i < G.rank(); ++i) {
    std::int64_t m = G.moduli[i];
    for (std::int64_t p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      std::int64_t q = 1;
      while (m % p == 0) { m /= p; q *= p; }
      by_prime[p].push_back({q, i});
    }
    if (m > 1) by_prime[m].push_back({m, i});
  }
  std::size_t factors = 0;
  for (auto& [p, v] : by_prime) {
    // Descending order of the power; ties broken by source index for determinism.
    std::stable_sort(v.begin(), v.end(), [](const PP& a, const PP& b) { return a.q > b.q; });
    factors = std::max(factors, v.size());
  }

  // Row r of the dealing (r = 0 the largest) lands in target factor
  // (factors-1-r), so the invariant factors come out ascending.
  std::vector<std::int64_t> target_moduli(factors, 1);
  InvariantFactorIso iso;
  for (auto& [p, v] : by_prime) {
    for (std::size_t r = 0; r < v.size(); ++r) {
      std::size_t tgt = factors - 1 - r;
      target_moduli[tgt] *= v[r].q;
      iso.slots.push_back({v[r].q, v[r].src, tgt});
    }
  }
  if (factors == 0) target_moduli.push_back(1);  // trivial group keeps rank 1

  iso.source = G;
  iso.target = make_group(std::move(target_moduli));
  if (!iso.target.invariant_factor)
    throw std::logic_error("invariant factor regrouping failed");
  return iso;
}

GroupElem InvariantFactorIso::forward(const GroupElem& a) const {
  if (a.exp.size() != source.rank()) throw std::invalid_argument("element rank does not match group");
  // CRT per target factor: exponent is determined by its residues mod each slot.
  std::vector<std::int64_t> exp(target.rank(), 0);
  for (const auto& s : slots) {
    std::int64_t r = a.exp[s.source_factor] % s.prime_power;
    std::int64_t m = target.moduli[s.target_factor];
    std::int64_t rest = m / s.prime_power;  // coprime to prime_power
    // x ≡ r (mod q), x ≡ 0 (mod rest): x = rest * (rest^{-1} r mod q)
    __int128 x = __int128(rest) * (inv_mod(rest, s.prime_power) * __int128(r) % s.prime_power);
    exp[s.target_factor] = (exp[s.target_factor] + static_cast<std::int64_t>(x % m)) % m;
  }
  return make_elem(target, std::move(exp));
}

GroupElem InvariantFactorIso::backward(const GroupElem& b) const {
  if (b.exp.size() != target.rank()) throw std::invalid_argument("element rank does not match group");
  std::vector<std::int64_t> exp(source.rank(), 0);
  for (const auto& s : slots) {
    std::int64_t r = b.exp[s.target_factor] % s.prime_power;
    std::int64_t m = source.moduli[s.source_factor];
    std::int64_t rest = m / s.prime_power;
    __int128 x = __int128(rest) * (inv_mod(rest, s.prime_power) * __int128(r) % s.prime_power);
    exp[s.source_factor] = (exp[s.source_factor] + static_cast<std::int64_t>(x % m)) % m;
  }
  return make_elem(source, std::move(exp));
}

}  // namespace pma
