#include "pma/resolution.hpp"

#include <stdexcept>

namespace pma {

namespace {

void require_elem(const FinAbGroup& G, const GroupElem& x) {
  if (x.exp.size() != G.rank()) throw std::invalid_argument("element rank does not match group");
  for (std::size_t l = 0; l < G.rank(); ++l)
    if (x.exp[l] < 0 || x.exp[l] >= G.moduli[l])
      throw std::invalid_argument("element exponent out of canonical range");
}

bool has_triple_constant(const CocycleSpec& spec) {
  for (auto a : spec.a_rst)
    if (a != 0) return true;
  return false;
}

// The defining formula on raw nonnegative exponent tuples.  Unlike the
// element-level view this is additive under plain tuple addition in either
// slot, which is the shape the differential identity is proved in.
Phase j_formula(const CocycleSpec& spec, const std::vector<std::int64_t>& m,
                const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
  const std::size_t n = m.size();
  Phase acc;
  // Nested phase_scale keeps every intermediate reduced mod 1, so the
  // exponent products x_l * (y_l - y_l') never have to fit together.
  for (std::size_t l = 0; l < n; ++l) {
    const std::int64_t over = y[l] - y[l] % m[l];
    if (spec.a_l[l] == 0 || x[l] == 0 || over == 0) continue;
    acc = acc + phase_scale(phase_scale(make_phase(spec.a_l[l], m[l] * m[l]), x[l]), over);
  }
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s + 1; t < n; ++t) {
      const std::int64_t a = spec.a_ij[pair_index(n, s, t)];
      const std::int64_t over = y[s] - y[s] % m[s];
      if (a == 0 || x[t] == 0 || over == 0) continue;
      acc = acc + phase_scale(phase_scale(make_phase(a, m[s] * m[t]), x[t]), over);
    }
  return acc;
}

}  // namespace

GroupElem GroupLift::project(const GroupElem& g) const {
  require_elem(lifted, g);
  return make_elem(base, g.exp);
}

GroupElem GroupLift::section(const GroupElem& b) const {
  require_elem(base, b);
  return make_elem(lifted, b.exp);
}

GroupLift lift_group(const FinAbGroup& base) {
  std::vector<std::int64_t> squared;
  squared.reserve(base.rank());
  for (auto m : base.moduli) {
    if (m > 3037000499LL) throw std::overflow_error("squared modulus exceeds 64 bits");
    squared.push_back(m * m);
  }
  return GroupLift{base, make_group(squared)};
}

Cochain3 pullback_cochain(const Cochain3& phi, const GroupLift& lift) {
  return Cochain3{lift.lifted, [phi, lift](const GroupElem& x, const GroupElem& y,
                                           const GroupElem& z) {
                    return phi.eval(lift.project(x), lift.project(y), lift.project(z));
                  }};
}

Phase j_eval(const CocycleSpec& spec, const GroupLift& lift, const GroupElem& g,
             const GroupElem& h) {
  if (!(spec.group == lift.base)) throw std::invalid_argument("spec group does not match lift base");
  if (has_triple_constant(spec))
    throw std::invalid_argument("resolving cochain needs all triple constants zero");
  require_elem(lift.lifted, g);
  require_elem(lift.lifted, h);
  return j_formula(spec, lift.base.moduli, g.exp, h.exp);
}

std::optional<std::array<GroupElem, 3>> resolution_counterexample(const CocycleSpec& j_spec,
                                                                  const CocycleSpec& phi_spec,
                                                                  std::int64_t budget) {
  if (!(j_spec.group == phi_spec.group))
    throw std::invalid_argument("cochain and cocycle specs live on different groups");
  if (has_triple_constant(j_spec))
    throw std::invalid_argument("resolving cochain needs all triple constants zero");
  const GroupLift lift = lift_group(j_spec.group);
  const std::int64_t order = lift.lifted.order();
  if (static_cast<__int128>(order) * order * order > budget)
    throw BudgetExceeded("resolution scan over lifted triples exceeds budget");

  const auto& m = lift.base.moduli;
  const std::size_t n = m.size();
  std::vector<GroupElem> elems, projected;
  elems.reserve(static_cast<std::size_t>(order));
  projected.reserve(static_cast<std::size_t>(order));
  for (std::int64_t i = 0; i < order; ++i) {
    elems.push_back(elem_at(lift.lifted, i));
    projected.push_back(lift.project(elems.back()));
  }

  std::vector<std::int64_t> xy(n), yz(n);
  for (std::int64_t i = 0; i < order; ++i)
    for (std::int64_t j = 0; j < order; ++j)
      for (std::int64_t k = 0; k < order; ++k) {
        const auto& x = elems[static_cast<std::size_t>(i)].exp;
        const auto& y = elems[static_cast<std::size_t>(j)].exp;
        const auto& z = elems[static_cast<std::size_t>(k)].exp;
        for (std::size_t l = 0; l < n; ++l) {
          xy[l] = x[l] + y[l];
          yz[l] = y[l] + z[l];
        }
        const Phase d = j_formula(j_spec, m, y, z) + j_formula(j_spec, m, x, yz) -
                        j_formula(j_spec, m, xy, z) - j_formula(j_spec, m, x, y);
        if (!(d == phi_eval(phi_spec, projected[static_cast<std::size_t>(i)],
                            projected[static_cast<std::size_t>(j)],
                            projected[static_cast<std::size_t>(k)])))
          return std::array<GroupElem, 3>{elems[static_cast<std::size_t>(i)],
                                          elems[static_cast<std::size_t>(j)],
                                          elems[static_cast<std::size_t>(k)]};
      }
  return std::nullopt;
}

bool verify_resolution(const CocycleSpec& spec, std::int64_t budget) {
  if (has_triple_constant(spec))
    throw std::invalid_argument("only specs with zero triple constants resolve over the square");
  if (resolution_counterexample(spec, spec, budget).has_value()) return false;
  // The scan certifies the identity for the explicit cochain; this settles
  // that the pullback is a coboundary of the lifted group as well.
  return is_coboundary(pullback_cochain(phi_cochain(spec), lift_group(spec.group))).has_value();
}

bool obstruction_check(const CocycleSpec& spec) {
  if (!has_triple_constant(spec))
    throw std::invalid_argument("obstruction check needs a nonzero triple constant");
  const GroupLift lift = lift_group(spec.group);
  return !is_coboundary(pullback_cochain(phi_cochain(spec), lift)).has_value();
}

}  // namespace pma
