#include "pma/cocycle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "pma/congruence.hpp"
#include "pma/kernels.hpp"

namespace pma {

std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }
std::size_t triple_count(std::size_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

std::size_t triple_index(std::size_t n, std::size_t i, std::size_t j, std::size_t k) {
  return triple_count(n) - triple_count(n - i) + pair_index(n - i - 1, j - i - 1, k - i - 1);
}

namespace {

std::int64_t gcd2(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c) {
  return std::gcd(a, std::gcd(b, c));
}

void require_elem(const FinAbGroup& G, const GroupElem& x) {
  if (x.exp.size() != G.rank()) throw std::invalid_argument("element rank does not match group");
  for (std::size_t l = 0; l < G.rank(); ++l)
    if (x.exp[l] < 0 || x.exp[l] >= G.moduli[l])
      throw std::invalid_argument("element exponent out of canonical range");
}

// Radix vector of the canonical parameter box, in a_l, a_ij, a_rst order.
std::vector<std::int64_t> spec_radix(const FinAbGroup& G) {
  const auto& m = G.moduli;
  const std::size_t n = m.size();
  std::vector<std::int64_t> radix(m.begin(), m.end());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) radix.push_back(gcd2(m[i], m[j]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) radix.push_back(gcd3(m[i], m[j], m[k]));
  return radix;
}

}  // namespace

CocycleSpec zero_spec(const FinAbGroup& G) {
  const std::size_t n = G.rank();
  return {G, std::vector<std::int64_t>(n, 0), std::vector<std::int64_t>(pair_count(n), 0),
          std::vector<std::int64_t>(triple_count(n), 0)};
}

bool is_canonical(const CocycleSpec& a) {
  const std::size_t n = a.group.rank();
  if (a.a_l.size() != n || a.a_ij.size() != pair_count(n) || a.a_rst.size() != triple_count(n))
    return false;
  auto radix = spec_radix(a.group);
  std::size_t d = 0;
  for (const auto* block : {&a.a_l, &a.a_ij, &a.a_rst})
    for (std::int64_t v : *block) {
      if (v < 0 || v >= radix[d]) return false;
      ++d;
    }
  return true;
}

bool is_zero_spec(const CocycleSpec& a) {
  for (const auto* block : {&a.a_l, &a.a_ij, &a.a_rst})
    for (std::int64_t v : *block)
      if (v != 0) return false;
  return true;
}

std::int64_t spec_class_count(const FinAbGroup& G) {
  __int128 c = 1;
  for (std::int64_t r : spec_radix(G)) {
    c *= r;
    if (c > INT64_MAX) throw std::overflow_error("class count exceeds 64 bits");
  }
  return static_cast<std::int64_t>(c);
}

CocycleSpec spec_at(const FinAbGroup& G, std::int64_t index) {
  if (index < 0 || index >= spec_class_count(G)) throw std::out_of_range("spec index");
  auto radix = spec_radix(G);
  std::vector<std::int64_t> digits(radix.size());
  for (std::size_t d = radix.size(); d-- > 0;) {
    digits[d] = index % radix[d];
    index /= radix[d];
  }
  CocycleSpec a = zero_spec(G);
  std::size_t d = 0;
  for (auto* block : {&a.a_l, &a.a_ij, &a.a_rst})
    for (auto& v : *block) v = digits[d++];
  return a;
}

std::int64_t spec_index(const CocycleSpec& a) {
  if (!is_canonical(a)) throw std::invalid_argument("spec is not canonical");
  auto radix = spec_radix(a.group);
  __int128 idx = 0;
  std::size_t d = 0;
  for (const auto* block : {&a.a_l, &a.a_ij, &a.a_rst})
    for (std::int64_t v : *block) idx = idx * radix[d++] + v;
  return static_cast<std::int64_t>(idx);
}

Phase phi_eval(const CocycleSpec& a, const GroupElem& x, const GroupElem& y,
               const GroupElem& z) {
  const auto& m = a.group.moduli;
  const std::size_t n = m.size();
  require_elem(a.group, x);
  require_elem(a.group, y);
  require_elem(a.group, z);
  Phase acc{};
  for (std::size_t l = 0; l < n; ++l) {
    std::int64_t carry = (y.exp[l] + z.exp[l]) / m[l];
    if (a.a_l[l] != 0 && x.exp[l] != 0 && carry != 0)
      acc = acc + phase_scale(make_phase(a.a_l[l], m[l]), x.exp[l] * carry);
  }
  std::size_t p = 0;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s + 1; t < n; ++t, ++p) {
      std::int64_t carry = (y.exp[s] + z.exp[s]) / m[s];
      if (a.a_ij[p] != 0 && x.exp[t] != 0 && carry != 0)
        acc = acc + phase_scale(make_phase(a.a_ij[p], m[t]), x.exp[t] * carry);
    }
  std::size_t q = 0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = r + 1; s < n; ++s)
      for (std::size_t t = s + 1; t < n; ++t, ++q) {
        if (a.a_rst[q] == 0) continue;
        std::int64_t w = z.exp[r] * y.exp[s] * x.exp[t];
        if (w != 0)
          acc = acc - phase_scale(make_phase(a.a_rst[q], gcd3(m[r], m[s], m[t])), w);
      }
  return acc;
}

Cochain3 phi_cochain(const CocycleSpec& a) {
  return {a.group, [a](const GroupElem& x, const GroupElem& y, const GroupElem& z) {
            return phi_eval(a, x, y, z);
          }};
}

Cochain3 cochain3_add(const Cochain3& f, const Cochain3& g) {
  if (f.group != g.group) throw std::invalid_argument("cochain groups differ");
  auto fe = f.eval, ge = g.eval;
  return {f.group, [fe, ge](const GroupElem& x, const GroupElem& y, const GroupElem& z) {
            return fe(x, y, z) + ge(x, y, z);
          }};
}

Cochain3 cochain3_sub(const Cochain3& f, const Cochain3& g) {
  if (f.group != g.group) throw std::invalid_argument("cochain groups differ");
  auto fe = f.eval, ge = g.eval;
  return {f.group, [fe, ge](const GroupElem& x, const GroupElem& y, const GroupElem& z) {
            return fe(x, y, z) - ge(x, y, z);
          }};
}

Cochain3 differential3(const Cochain2& J) {
  FinAbGroup G = J.group;
  auto ev = J.eval;
  return {G, [G, ev](const GroupElem& a, const GroupElem& b, const GroupElem& c) {
            return ev(b, c) + ev(a, elem_mul(G, b, c)) - ev(elem_mul(G, a, b), c) - ev(a, b);
          }};
}

bool is_cocycle(const Cochain3& phi, std::int64_t budget) {
  __int128 quads = 1;
  for (int i = 0; i < 4; ++i) quads *= phi.group.order();
  if (quads > budget) {
    const auto shown = static_cast<std::int64_t>(
        std::min<__int128>(quads, std::numeric_limits<std::int64_t>::max()));
    throw BudgetExceeded("cocycle check needs " + std::to_string(shown) +
                         " quadruples, over the budget of " + std::to_string(budget));
  }
  CochainTable t = tabulate3(phi);
  return table_is_normalized(t) && pentagon_scan(t) < 0;
}

KCochain3 pushdown_F3(const Cochain3& phi) {
  const FinAbGroup& G = phi.group;
  const auto& m = G.moduli;
  const std::size_t n = G.rank();
  auto gen = [&](std::size_t r, std::int64_t e) {
    GroupElem x = identity(G);
    x.exp[r] = ((e % m[r]) + m[r]) % m[r];
    return x;
  };
  KCochain3 f;
  f.f_rrr.resize(n);
  f.f_rrs.resize(pair_count(n));
  f.f_rss.resize(pair_count(n));
  f.f_rst.resize(triple_count(n));
  for (std::size_t r = 0; r < n; ++r) {
    Phase acc{};
    for (std::int64_t l = 0; l < m[r]; ++l) acc = acc + phi.eval(gen(r, 1), gen(r, l), gen(r, 1));
    f.f_rrr[r] = acc;
  }
  std::size_t p = 0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = r + 1; s < n; ++s, ++p) {
      Phase rrs{}, rss{};
      for (std::int64_t l = 0; l < m[r]; ++l)
        rrs = rrs + phi.eval(gen(r, l), gen(r, 1), gen(s, 1)) -
              phi.eval(gen(r, l), gen(s, 1), gen(r, 1)) +
              phi.eval(gen(s, 1), gen(r, l), gen(r, 1));
      for (std::int64_t l = 0; l < m[s]; ++l)
        rss = rss + phi.eval(gen(r, 1), gen(s, l), gen(s, 1)) -
              phi.eval(gen(s, l), gen(r, 1), gen(s, 1)) +
              phi.eval(gen(s, l), gen(s, 1), gen(r, 1));
      f.f_rrs[p] = rrs;
      f.f_rss[p] = rss;
    }
  std::size_t q = 0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = r + 1; s < n; ++s)
      for (std::size_t t = s + 1; t < n; ++t, ++q) {
        GroupElem gr = gen(r, 1), gs = gen(s, 1), gt = gen(t, 1);
        f.f_rst[q] = phi.eval(gr, gs, gt) - phi.eval(gs, gr, gt) - phi.eval(gr, gt, gs) +
                     phi.eval(gt, gr, gs) + phi.eval(gs, gt, gr) - phi.eval(gt, gs, gr);
      }
  return f;
}

bool k_is_cocycle(const KCochain3& f, const FinAbGroup& G) {
  const auto& m = G.moduli;
  const std::size_t n = G.rank();
  if (f.f_rrr.size() != n || f.f_rrs.size() != pair_count(n) ||
      f.f_rss.size() != pair_count(n) || f.f_rst.size() != triple_count(n))
    throw std::invalid_argument("cochain shape does not match group");
  for (std::size_t r = 0; r < n; ++r)
    if (!phase_scale(f.f_rrr[r], m[r]).is_zero()) return false;
  std::size_t p = 0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = r + 1; s < n; ++s, ++p)
      if (!(phase_scale(f.f_rss[p], m[r]) + phase_scale(f.f_rrs[p], m[s])).is_zero())
        return false;
  std::size_t q = 0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = r + 1; s < n; ++s)
      for (std::size_t t = s + 1; t < n; ++t, ++q)
        for (std::int64_t mm : {m[r], m[s], m[t]})
          if (!phase_scale(f.f_rst[q], mm).is_zero()) return false;
  return true;
}

std::optional<std::vector<Phase>> k_is_coboundary(const KCochain3& f, const FinAbGroup& G) {
  if (!k_is_cocycle(f, G)) throw std::invalid_argument("not a cocycle on the generator complex");
  const auto& m = G.moduli;
  const std::size_t n = G.rank();
  for (const Phase& v : f.f_rrr)
    if (!v.is_zero()) return std::nullopt;
  for (const Phase& v : f.f_rst)
    if (!v.is_zero()) return std::nullopt;
  std::vector<Phase> gamma(pair_count(n));
  std::size_t p = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++p) {
      // gamma/D with m_i gamma = f_iij and m_j gamma = -f_ijj, cleared to
      // integer congruences mod D.
      const Phase& fiij = f.f_rrs[p];
      const Phase& fijj = f.f_rss[p];
      std::int64_t D = std::lcm(m[i] * fiij.den, m[j] * fijj.den);
      std::vector<Congruence> sys = {
          {{m[i]}, fiij.num * (D / fiij.den), D},
          {{m[j]}, -fijj.num * (D / fijj.den), D},
      };
      auto u = solve_congruence_system(sys, 1);
      if (!u) return std::nullopt;
      gamma[p] = make_phase((*u)[0], D);
    }
  return gamma;
}

std::optional<std::vector<Phase>> is_coboundary(const Cochain3& phi) {
  KCochain3 f = pushdown_F3(phi);
  if (!k_is_cocycle(f, phi.group))
    throw std::invalid_argument("input is not a 3-cocycle");
  return k_is_coboundary(f, phi.group);
}

CocycleSpec classify(const Cochain3& phi) {
  const FinAbGroup& G = phi.group;
  const auto& m = G.moduli;
  const std::size_t n = G.rank();
  KCochain3 f = pushdown_F3(phi);

  // Closed-form read-off. Cocycle structure guarantees each denominator
  // divides the listed modulus; when it does not, the verification below
  // cannot pass and the exhaustive fallback takes over anyway.
  CocycleSpec cand = zero_spec(G);
  bool extracted = k_is_cocycle(f, G);
  if (extracted) {
    for (std::size_t l = 0; l < n; ++l)
      cand.a_l[l] = (f.f_rrr[l].num * (m[l] / f.f_rrr[l].den)) % m[l];
    std::size_t p = 0;
    for (std::size_t i = 0; i < n && extracted; ++i)
      for (std::size_t j = i + 1; j < n; ++j, ++p) {
        // Shift by the coboundary with gamma = f_ijj/m_j to zero out f_ijj;
        // what lands on f_iij is a_ij/m_j up to the residual m_j-torsion,
        // so reducing mod gcd(m_i, m_j) is exact.
        Phase g0 = make_phase(f.f_rss[p].num, f.f_rss[p].den * m[j]);
        Phase shifted = f.f_rrs[p] + phase_scale(g0, m[i]);
        if (m[j] % shifted.den != 0) {
          extracted = false;
          break;
        }
        cand.a_ij[p] = (shifted.num * (m[j] / shifted.den)) % gcd2(m[i], m[j]);
      }
    std::size_t q = 0;
    for (std::size_t r = 0; r < n && extracted; ++r)
      for (std::size_t s = r + 1; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t, ++q) {
          std::int64_t g = gcd3(m[r], m[s], m[t]);
          cand.a_rst[q] = (f.f_rst[q].num * (g / f.f_rst[q].den)) % g;
        }
  }
  if (extracted && is_coboundary(cochain3_sub(phi, phi_cochain(cand)))) return cand;

  std::int64_t count = spec_class_count(G);
  if (count > (std::int64_t{1} << 20))
    throw BudgetExceeded("classification fallback over " + std::to_string(count) + " blocks");
  for (std::int64_t idx = 0; idx < count; ++idx) {
    CocycleSpec s = spec_at(G, idx);
    if (is_coboundary(cochain3_sub(phi, phi_cochain(s)))) return s;
  }
  throw std::domain_error("no class matches; input was not a 3-cocycle");
}

Cochain2 phi_tilde(const Cochain3& phi, const GroupElem& g) {
  FinAbGroup G = phi.group;
  require_elem(G, g);
  auto ev = phi.eval;
  GroupElem gg = g;
  return {G, [ev, gg](const GroupElem& e, const GroupElem& f) {
            return ev(gg, e, f) + ev(e, f, gg) - ev(e, gg, f);
          }};
}

}  // namespace pma
