#include "pma/phase.hpp"

#include <numeric>
#include <stdexcept>

namespace pma {

namespace {

using i128 = __int128;

std::int64_t checked64(i128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error(what);
  return static_cast<std::int64_t>(v);
}

Phase reduce(i128 num, i128 den) {
  if (den == 0) throw std::invalid_argument("phase denominator is zero");
  if (den < 0) { den = -den; num = -num; }
  num %= den;
  if (num < 0) num += den;
  // gcd over i128 by hand; operands are nonnegative here.
  i128 a = num, b = den;
  while (b != 0) { i128 t = a % b; a = b; b = t; }
  if (a == 0) a = 1;
  return Phase{checked64(num / a, "phase numerator exceeds 64 bits"),
               checked64(den / a, "phase denominator exceeds 64 bits")};
}

}  // namespace

Phase make_phase(std::int64_t num, std::int64_t den) { return reduce(num, den); }

Phase phase_add(Phase p, Phase q) {
  // Common denominator via lcm keeps intermediates within 128 bits.
  std::int64_t g = std::gcd(p.den, q.den);
  i128 l = i128(p.den) / g * q.den;
  return reduce(i128(p.num) * (l / p.den) + i128(q.num) * (l / q.den), l);
}

Phase phase_neg(Phase p) { return p.num == 0 ? p : Phase{p.den - p.num, p.den}; }

Phase phase_sub(Phase p, Phase q) { return phase_add(p, phase_neg(q)); }

Phase phase_scale(Phase p, std::int64_t k) { return reduce(i128(k) * p.num, p.den); }

std::int64_t phase_order(Phase p) { return p.den; }

std::string to_string(Phase p) {
  return std::to_string(p.num) + "/" + std::to_string(p.den);
}

}  // namespace pma
