#include "pma/construct.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pma {

namespace {

std::int64_t mod_pos(std::int64_t v, std::int64_t m) {
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return r;
}

std::optional<std::int64_t> exact_sqrt(std::int64_t v) {
  std::int64_t r = 0;
  while (r * r < v) ++r;
  if (r * r == v) return r;
  return std::nullopt;
}

IntMat identity_mat(std::size_t n) {
  IntMat I(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

struct Frac {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

Frac reduce(std::int64_t num, std::int64_t den) {
  std::int64_t g = std::gcd(num, den);
  if (g) {
    num /= g;
    den /= g;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return {num, den};
}

}  // namespace

std::int64_t upsilon(std::int64_t k) {
  if (k < 0) throw std::invalid_argument("upsilon needs a nonnegative argument");
  return (k % 2 != 0) ? k + 1 : k;
}

std::int64_t big_upsilon(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("big_upsilon needs a positive argument");
  std::int64_t out = 1;
  for (std::int64_t p = 2; p * p <= k; ++p) {
    if (k % p) continue;
    std::int64_t n = 0;
    while (k % p == 0) {
      k /= p;
      ++n;
    }
    for (std::int64_t e = 0; e < upsilon(n); ++e) out *= p;
  }
  if (k > 1) out *= k * k;  // leftover prime has exponent 1, bumped to 2
  return out;
}

bool squarefree(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("squarefree needs a positive argument");
  for (std::int64_t p = 2; p * p <= k; ++p) {
    if (k % p) continue;
    k /= p;
    if (k % p == 0) return false;
  }
  return true;
}

bool genuine_flag(const CocycleSpec& spec) { return !is_zero_spec(spec); }

StandardConstruction standard_construction(const GeneralizedDynkinDiagram& diagram) {
  const std::size_t r = diagram.rank();
  for (const Phase& q : diagram.q_ii)
    if (q.is_zero()) throw std::invalid_argument("vertex labels must be nonzero");

  StandardConstruction out;
  bool all_squarefree = true;
  std::int64_t big = 1;
  auto fold = [&](const Phase& q) {
    if (q.is_zero()) return;  // absent edge, order 1
    all_squarefree = all_squarefree && squarefree(q.den);
    big = std::lcm(big, big_upsilon(q.den));
  };
  for (const Phase& q : diagram.q_ii) fold(q);
  for (const Phase& q : diagram.q_tilde) fold(q);

  if (r == 1) {
    const std::int64_t u = big_upsilon(diagram.q_ii[0].den);
    out.one_param_m = (diagram.q_ii[0].den % 2 == 0) ? u : 2 * u;
  }

  if (all_squarefree) {
    out.refused = true;
    out.reason = "all label orders are squarefree: no nontrivial associator possible";
    return out;
  }

  auto m = exact_sqrt(big);
  if (!m) throw std::logic_error("lcm of squared-up orders is not a square");
  out.m = *m;
  const std::int64_t msq = *m * *m;

  FinAbGroup base = make_group(std::vector<std::int64_t>(r, *m));
  IntMat X(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    X[i][i] = diagram.q_ii[i].num * (msq / diagram.q_ii[i].den);
    for (std::size_t j = i + 1; j < r; ++j) {
      const Phase& q = diagram.tilde(i, j);
      if (!q.is_zero()) X[i][j] = q.num * (msq / q.den);
    }
  }

  RootDatum D = make_root_datum(base, diagram, identity_mat(r), X);
  if (!verify_root_datum(D).pass())
    throw std::logic_error("assembled datum fails verification");
  auto a = determine_a(D);
  if (!a || is_zero_spec(*a))
    throw std::logic_error("constants came out trivial despite a non-squarefree order");
  out.genuine = genuine_flag(*a);
  out.constants = std::move(*a);
  out.datum = std::move(D);
  return out;
}

std::vector<std::vector<std::size_t>> cartan_components(const IntMat& C) {
  const std::size_t n = C.size();
  if (n == 0) throw std::invalid_argument("empty Cartan matrix");
  for (const auto& row : C)
    if (row.size() != n) throw std::invalid_argument("Cartan matrix must be square");
  for (std::size_t i = 0; i < n; ++i) {
    if (C[i][i] != 2) throw std::invalid_argument("Cartan diagonal must be 2");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (C[i][j] > 0) throw std::invalid_argument("off-diagonal Cartan entries must be <= 0");
      if ((C[i][j] == 0) != (C[j][i] == 0))
        throw std::invalid_argument("Cartan zeros must be symmetric");
    }
  }

  std::vector<std::vector<std::size_t>> comps;
  std::vector<bool> seen(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = true;
    for (std::size_t k = 0; k < comp.size(); ++k)
      for (std::size_t j = 0; j < n; ++j)
        if (!seen[j] && C[comp[k]][j] != 0) {
          seen[j] = true;
          comp.push_back(j);
        }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

CartanConstruction cartan_construction(const IntMat& C,
                                       const std::vector<std::int64_t>& component_orders) {
  CartanConstruction out;
  out.components = cartan_components(C);
  const std::size_t n = C.size();

  // minimal positive symmetrizer, one scaling freedom per component
  std::vector<Frac> frac(n);
  out.d.assign(n, 0);
  for (const auto& comp : out.components) {
    frac[comp[0]] = {1, 1};
    std::vector<std::size_t> queue{comp[0]};
    std::vector<bool> placed(n, false);
    placed[comp[0]] = true;
    for (std::size_t k = 0; k < queue.size(); ++k) {
      std::size_t i = queue[k];
      for (std::size_t j : comp) {
        if (placed[j] || C[i][j] == 0) continue;
        // d_i c_ij == d_j c_ji
        frac[j] = reduce(frac[i].num * C[i][j], frac[i].den * C[j][i]);
        placed[j] = true;
        queue.push_back(j);
      }
    }
    for (std::size_t i : comp)
      for (std::size_t j : comp)
        if (i != j && frac[i].num * C[i][j] * frac[j].den != frac[j].num * C[j][i] * frac[i].den)
          throw std::invalid_argument("Cartan matrix is not symmetrizable");
    std::int64_t l = 1;
    for (std::size_t i : comp) l = std::lcm(l, frac[i].den);
    std::int64_t g = 0;
    for (std::size_t i : comp) g = std::gcd(g, frac[i].num * (l / frac[i].den));
    for (std::size_t i : comp) out.d[i] = frac[i].num * (l / frac[i].den) / g;
  }

  auto triple_edge = [&](const std::vector<std::size_t>& comp) {
    for (std::size_t i : comp)
      for (std::size_t j : comp)
        if (i != j && C[i][j] * C[j][i] == 3) return true;
    return false;
  };

  if (!component_orders.empty() && component_orders.size() != out.components.size())
    throw std::invalid_argument("need one modulus per component");
  std::int64_t prev = 0;
  for (std::size_t c = 0; c < out.components.size(); ++c) {
    const bool g2 = triple_edge(out.components[c]);
    std::int64_t m;
    if (!component_orders.empty()) {
      m = component_orders[c];
      if (m <= 2 || m % 2 == 0) throw std::invalid_argument("component moduli must be odd and > 2");
      if (prev && m % prev != 0)
        throw std::invalid_argument("component moduli must form a divisibility chain");
      if (g2 && m % 3 == 0)
        throw std::invalid_argument("a triple-edge component needs a modulus prime to 3");
    } else if (!prev) {
      m = g2 ? 5 : 3;
    } else if (g2 && prev % 3 == 0) {
      throw std::invalid_argument(
          "no admissible default modulus: the chain is divisible by 3 but a triple-edge "
          "component needs one prime to 3");
    } else {
      m = prev;
    }
    out.orders.push_back(m);
    prev = m;
  }

  std::vector<std::int64_t> moduli(n, 0);
  for (std::size_t c = 0; c < out.components.size(); ++c)
    for (std::size_t i : out.components[c]) moduli[i] = out.orders[c];
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (moduli[i + 1] % moduli[i] != 0)
      throw std::invalid_argument(
          "vertex order must list components so the moduli ascend by divisibility");

  FinAbGroup base = make_group(moduli);
  IntMat X(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    X[i][i] = out.d[i];
    for (std::size_t j = i + 1; j < n; ++j)
      if (C[i][j] != 0) X[i][j] = mod_pos(out.d[i] * C[i][j], moduli[i] * moduli[i]);
  }

  IntMat S = identity_mat(n);
  out.datum = make_root_datum(base, structure_diagram(base, S, X), S, X);
  auto a = determine_a(out.datum);
  if (!a) throw std::logic_error("constructed datum fails its own congruences");
  out.constants = std::move(*a);
  out.genuine = genuine_flag(out.constants);
  return out;
}

}  // namespace pma
