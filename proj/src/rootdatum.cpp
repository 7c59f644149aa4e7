#include "pma/rootdatum.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "intmat.hpp"
#include "pma/congruence.hpp"

namespace pma {

namespace {

std::int64_t mod_pos(__int128 v, std::int64_t m) {
  __int128 r = v % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

// sum_j X[i][j] * T[l][j], reduced mod m.
std::int64_t row_dot_mod(const IntMat& X, const IntMat& T, std::size_t i, std::size_t l,
                         std::int64_t m) {
  __int128 acc = 0;
  for (std::size_t j = 0; j < X[i].size(); ++j)
    acc += static_cast<__int128>(X[i][j]) * T[l][j] % m;
  return mod_pos(acc, m);
}

bool rect_shape(const IntMat& M, std::size_t rows, std::size_t cols) {
  if (M.size() != rows) return false;
  for (const auto& row : M)
    if (row.size() != cols) return false;
  return true;
}

}  // namespace

const Phase& GeneralizedDynkinDiagram::tilde(std::size_t i, std::size_t j) const {
  if (i == j || i >= rank() || j >= rank())
    throw std::invalid_argument("edge label needs two distinct vertices");
  if (i > j) std::swap(i, j);
  return q_tilde[pair_index(rank(), i, j)];
}

GeneralizedDynkinDiagram diagram_from_constants(
    const std::vector<Phase>& q_ii, const std::vector<std::vector<Phase>>& q_tilde) {
  const std::size_t r = q_ii.size();
  if (q_tilde.size() != r) throw std::invalid_argument("edge label matrix must be rank x rank");
  for (const auto& row : q_tilde)
    if (row.size() != r) throw std::invalid_argument("edge label matrix must be rank x rank");
  for (std::size_t i = 0; i < r; ++i) {
    if (!q_tilde[i][i].is_zero())
      throw std::invalid_argument("edge label matrix must have a zero diagonal");
    for (std::size_t j = i + 1; j < r; ++j)
      if (!(q_tilde[i][j] == q_tilde[j][i]))
        throw std::invalid_argument("edge labels must be symmetric");
  }
  GeneralizedDynkinDiagram D;
  D.q_ii = q_ii;
  D.q_tilde.reserve(pair_count(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) D.q_tilde.push_back(q_tilde[i][j]);
  return D;
}

GeneralizedDynkinDiagram structure_diagram(const FinAbGroup& base, const IntMat& S,
                                           const IntMat& X) {
  const std::size_t n = base.rank();
  const std::size_t m = S.size();
  if (!rect_shape(S, m, n) || !rect_shape(X, n, m))
    throw std::invalid_argument("parameter matrices must be m x n and n x m");
  const FinAbGroup lifted = lift_group(base).lifted;

  GeneralizedDynkinDiagram D;
  D.q_ii.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Phase q;
    for (std::size_t k = 0; k < n; ++k)
      q = q + phase_scale(make_phase(X[k][i], lifted.moduli[k]), S[i][k]);
    D.q_ii.push_back(q);
  }
  D.q_tilde.reserve(pair_count(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Phase q;
      for (std::size_t k = 0; k < n; ++k)
        q = q + phase_scale(make_phase(X[k][j], lifted.moduli[k]), S[i][k]) +
            phase_scale(make_phase(X[k][i], lifted.moduli[k]), S[j][k]);
      D.q_tilde.push_back(q);
    }
  return D;
}

std::optional<IntMat> solve_T(const IntMat& S, const FinAbGroup& base) {
  const std::size_t n = base.rank();
  const std::size_t m = S.size();
  if (!rect_shape(S, m, n)) throw std::invalid_argument("S must be m x n");
  const FinAbGroup lifted = lift_group(base).lifted;

  IntMat T;
  T.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Congruence> rows;
    rows.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      Congruence c;
      c.coeffs.reserve(m);
      for (std::size_t l = 0; l < m; ++l) c.coeffs.push_back(S[l][j]);
      c.rhs = (i == j) ? 1 : 0;
      c.modulus = lifted.moduli[i];
      rows.push_back(std::move(c));
    }
    auto t = solve_congruence_system(rows, m);
    if (!t) return std::nullopt;
    T.push_back(std::move(*t));
  }
  return T;
}

RootDatum make_root_datum(const FinAbGroup& base, const GeneralizedDynkinDiagram& diagram,
                          const IntMat& S, const IntMat& X) {
  if (!base.invariant_factor)
    throw std::invalid_argument("base group must have the ascending divisibility chain");
  const std::size_t n = base.rank();
  const std::size_t m = diagram.rank();
  if (!rect_shape(S, m, n) || !rect_shape(X, n, m))
    throw std::invalid_argument("parameter matrices must be m x n and n x m");
  if (diagram.q_tilde.size() != pair_count(m))
    throw std::invalid_argument("diagram edge labels do not match its rank");
  auto T = solve_T(S, base);
  if (!T) throw std::invalid_argument("degrees do not generate the lifted group");
  return RootDatum{base, diagram, S, X, std::move(*T)};
}

CongruenceReport check_congruences(const IntMat& X, const IntMat& T,
                                   const FinAbGroup& base) {
  if (!base.invariant_factor)
    throw std::invalid_argument("base group must have the ascending divisibility chain");
  const std::size_t n = base.rank();
  const std::size_t m = X.empty() ? (T.empty() ? 0 : T[0].size()) : X[0].size();
  if (!rect_shape(X, n, m) || !rect_shape(T, n, m))
    throw std::invalid_argument("X and T must both be n x m");
  const auto& mm = base.moduli;

  CongruenceReport rep;
  rep.holds = true;
  for (std::size_t i = 0; i < n && rep.holds; ++i)
    for (std::size_t l = 0; l < i; ++l)
      if (row_dot_mod(X, T, i, l, mm[i]) != 0) {
        rep.holds = false;
        rep.violation = std::make_pair(i, l);
        break;
      }

  rep.a_i.reserve(n);
  for (std::size_t i = 0; i < n; ++i) rep.a_i.push_back(row_dot_mod(X, T, i, i, mm[i]));

  rep.raw_consistent = true;
  rep.a_il.reserve(pair_count(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = i + 1; l < n; ++l) {
      const std::int64_t ratio = mm[l] / mm[i];
      const std::int64_t r = row_dot_mod(X, T, i, l, mm[l]);
      const std::int64_t a = mod_pos(static_cast<__int128>(ratio) * r, mm[l]);
      rep.a_il.push_back(a);
      const std::int64_t big = mm[i] * mm[l];
      const std::int64_t lhs = mod_pos(static_cast<__int128>(row_dot_mod(X, T, i, l, big)) * mm[l], big);
      if (lhs != mod_pos(static_cast<__int128>(mm[i]) * a, big)) rep.raw_consistent = false;
    }
  return rep;
}

std::optional<CocycleSpec> determine_a(const RootDatum& D) {
  CongruenceReport rep = check_congruences(D.X, D.T, D.base);
  if (!rep.holds) return std::nullopt;
  CocycleSpec a = zero_spec(D.base);
  a.a_l = rep.a_i;
  a.a_ij = rep.a_il;
  return a;
}

RootDatumReport verify_root_datum(const RootDatum& D) {
  RootDatumReport rep;
  const std::size_t n = D.base.rank();
  const std::size_t m = D.diagram.rank();
  rep.shapes = D.base.invariant_factor && rect_shape(D.S, m, n) && rect_shape(D.X, n, m) &&
               rect_shape(D.T, n, m) && D.diagram.q_tilde.size() == pair_count(m);
  if (!rep.shapes) return rep;
  const FinAbGroup lifted = lift_group(D.base).lifted;

  rep.entry_bounds = true;
  for (std::size_t i = 0; i < m && rep.entry_bounds; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (D.S[i][k] < 0 || D.S[i][k] >= lifted.moduli[k]) {
        rep.entry_bounds = false;
        break;
      }
  for (std::size_t k = 0; k < n && rep.entry_bounds; ++k)
    for (std::size_t j = 0; j < m; ++j)
      if (D.X[k][j] < 0 || D.X[k][j] >= lifted.moduli[k]) {
        rep.entry_bounds = false;
        break;
      }

  rep.ts_identity = true;
  for (std::size_t i = 0; i < n && rep.ts_identity; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      __int128 acc = 0;
      for (std::size_t l = 0; l < m; ++l) acc += static_cast<__int128>(D.T[i][l]) * D.S[l][j];
      if (mod_pos(acc, lifted.moduli[i]) != (i == j ? 1 : 0)) {
        rep.ts_identity = false;
        break;
      }
    }

  const GeneralizedDynkinDiagram derived = structure_diagram(D.base, D.S, D.X);
  rep.diagram_match = true;
  for (std::size_t i = 0; i < m && rep.diagram_match; ++i)
    if (!(derived.q_ii[i] == D.diagram.q_ii[i])) {
      rep.diagram_match = false;
      rep.diagram_violation = std::make_pair(i, i);
    }
  for (std::size_t i = 0; i < m && rep.diagram_match; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (!(derived.tilde(i, j) == D.diagram.tilde(i, j))) {
        rep.diagram_match = false;
        rep.diagram_violation = std::make_pair(i, j);
        break;
      }

  const CongruenceReport cong = check_congruences(D.X, D.T, D.base);
  rep.congruences = cong.holds;
  rep.congruence_violation = cong.violation;
  return rep;
}

YDModuleData build_yd_module(const RootDatum& D) {
  auto a = determine_a(D);
  if (!a) throw std::domain_error("descent congruences fail; no cocycle constants exist");
  const GroupLift lift = lift_group(D.base);
  const std::size_t n = D.base.rank();
  const std::size_t m = D.S.size();

  YDModuleData V;
  V.group = lift.lifted;
  V.degrees.reserve(m);
  for (std::size_t j = 0; j < m; ++j) V.degrees.push_back(make_elem(lift.lifted, D.S[j]));

  std::vector<GroupElem> gens;
  gens.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::int64_t> e(n, 0);
    e[i] = 1;
    gens.push_back(make_elem(lift.lifted, e));
  }

  V.action.assign(n, std::vector<Phase>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      V.action[i][j] = make_phase(D.X[i][j], lift.lifted.moduli[i]) +
                       j_eval(*a, lift, gens[i], V.degrees[j]) -
                       j_eval(*a, lift, V.degrees[j], gens[i]);
  V.twist = std::move(*a);
  return V;
}

bool yd_module_descends(const YDModuleData& V, const FinAbGroup& base) {
  if (!(V.twist.group == base))
    throw std::invalid_argument("module twist constants live over a different base group");
  const GroupLift lift = lift_group(base);
  if (!(lift.lifted == V.group)) throw std::invalid_argument("module group is not the lift of base");
  const std::size_t n = base.rank();

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::int64_t> e(n, 0);
    e[i] = 1;
    const GroupElem g = make_elem(lift.lifted, e);
    const GroupElem gp = elem_pow(lift.lifted, g, base.moduli[i]);
    for (std::size_t j = 0; j < V.degrees.size(); ++j) {
      const GroupElem& h = V.degrees[j];
      // bare character exponent of g_i on the j-th vector
      const Phase bare = V.action[i][j] - j_eval(V.twist, lift, g, h) + j_eval(V.twist, lift, h, g);
      const Phase powered = phase_scale(bare, base.moduli[i]) + j_eval(V.twist, lift, gp, h) -
                            j_eval(V.twist, lift, h, gp);
      if (!powered.is_zero()) return false;
    }
  }
  return true;
}

GeneralizedDynkinDiagram braiding_of_yd(const YDModuleData& V) {
  const std::size_t n = V.group.rank();
  const std::size_t m = V.degrees.size();
  if (V.action.size() != n) throw std::invalid_argument("action matrix must have one row per generator");
  for (const auto& row : V.action)
    if (row.size() != m) throw std::invalid_argument("action matrix must have one column per degree");

  auto q = [&](std::size_t i, std::size_t j) {
    Phase acc;
    for (std::size_t k = 0; k < n; ++k)
      acc = acc + phase_scale(V.action[k][j], V.degrees[i].exp[k]);
    return acc;
  };

  GeneralizedDynkinDiagram D;
  D.q_ii.reserve(m);
  for (std::size_t i = 0; i < m; ++i) D.q_ii.push_back(q(i, i));
  D.q_tilde.reserve(pair_count(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) D.q_tilde.push_back(q(i, j) + q(j, i));
  return D;
}

SupportGroup support_group(const YDModuleData& V) {
  const std::size_t n = V.group.rank();
  const std::size_t m = V.degrees.size();
  intmat::Mat M(n, std::vector<std::int64_t>(m + n, 0));
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t r = 0; r < n; ++r) M[r][c] = V.degrees[c].exp[r];
  for (std::size_t k = 0; k < n; ++k) M[k][m + k] = V.group.moduli[k];

  const intmat::ColEchelon ech = intmat::col_echelon(M);
  // diag(moduli) sits in the lattice, so there is a pivot in every row.
  SupportGroup out;
  out.basis.assign(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out.basis[r][c] = ech.H[r][c];
  __int128 det = 1;
  for (const auto& [r, c] : ech.pivots) det *= ech.H[r][c];
  out.index = intmat::checked64(det);
  out.is_full = out.index == 1;
  return out;
}

std::optional<std::vector<std::size_t>> twist_equivalent(
    const GeneralizedDynkinDiagram& D1, const GeneralizedDynkinDiagram& D2) {
  const std::size_t r = D1.rank();
  if (r > 8 || D2.rank() > 8) throw std::invalid_argument("twist search bounded at rank 8");
  if (D2.rank() != r) return std::nullopt;

  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    bool ok = true;
    for (std::size_t i = 0; i < r && ok; ++i)
      if (!(D2.q_ii[perm[i]] == D1.q_ii[i])) ok = false;
    for (std::size_t i = 0; i < r && ok; ++i)
      for (std::size_t j = i + 1; j < r; ++j)
        if (!(D2.tilde(perm[i], perm[j]) == D1.tilde(i, j))) {
          ok = false;
          break;
        }
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace pma
