#include "pma/kernels.hpp"

#include <numeric>

namespace pma {

// Pentagon residue t1+t2+t3+2L-t4-t5 lies in (0, 5L), so den must keep
// 5L-3 inside int32.
static constexpr std::int64_t max_table_den = (std::int64_t{INT32_MAX} + 3) / 5;

CochainTable tabulate3(const Cochain3& phi) {
  const FinAbGroup& G = phi.group;
  const std::int64_t n = G.order();
  std::vector<GroupElem> elems(n);
  for (std::int64_t i = 0; i < n; ++i) elems[i] = elem_at(G, i);

  CochainTable t;
  t.n = n;
  t.mul.resize(n * n);
  for (std::int64_t a = 0; a < n; ++a)
    for (std::int64_t b = 0; b < n; ++b)
      t.mul[a * n + b] = static_cast<std::int32_t>(elem_index(G, elem_mul(G, elems[a], elems[b])));

  std::vector<Phase> vals(n * n * n);
  std::int64_t L = 1;
  for (std::int64_t a = 0; a < n; ++a)
    for (std::int64_t b = 0; b < n; ++b)
      for (std::int64_t c = 0; c < n; ++c) {
        Phase v = phi.eval(elems[a], elems[b], elems[c]);
        L = std::lcm(L, v.den);
        if (L > max_table_den) throw std::overflow_error("cochain denominators exceed table range");
        vals[(a * n + b) * n + c] = v;
      }
  t.den = static_cast<std::int32_t>(L);
  t.num.resize(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i)
    t.num[i] = static_cast<std::int32_t>(vals[i].num * (L / vals[i].den));
  return t;
}

bool table_is_normalized(const CochainTable& t) {
  const std::int64_t n = t.n;
  for (std::int64_t a = 0; a < n; ++a)
    for (std::int64_t b = 0; b < n; ++b)
      if (t.num[(0 * n + a) * n + b] || t.num[(a * n + 0) * n + b] || t.num[(a * n + b) * n + 0])
        return false;
  return true;
}

std::int64_t pentagon_scan_scalar(const CochainTable& t) {
  const std::int64_t n = t.n;
  const std::int32_t L = t.den;
  const std::int32_t* mul = t.mul.data();
  const std::int32_t* num = t.num.data();
  for (std::int64_t a = 0; a < n; ++a)
    for (std::int64_t b = 0; b < n; ++b) {
      const std::int32_t ab = mul[a * n + b];
      const std::int32_t* row5 = num + (a * n + b) * n;
      for (std::int64_t c = 0; c < n; ++c) {
        const std::int32_t* r1 = num + (b * n + c) * n;
        const std::int32_t* r2 = num + (a * n + mul[b * n + c]) * n;
        const std::int32_t* r4 = num + (ab * n + c) * n;
        const std::int32_t* cd = mul + c * n;
        const std::int32_t fixed = row5[c] + 2 * L;  // t3 = phi(a,b,c)
        for (std::int64_t d = 0; d < n; ++d) {
          std::int32_t r = r1[d] + r2[d] + fixed - r4[d] - row5[cd[d]];
          if (r % L != 0) return ((a * n + b) * n + c) * n + d;
        }
      }
    }
  return -1;
}

}  // namespace pma
