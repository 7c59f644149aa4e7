#pragma once

#include <cstdint>
#include <string>

namespace pma {

// Element of Q/Z in lowest terms: 0 <= num < den, gcd(num, den) = 1, zero is 0/1.
// Encodes the root of unity e^{2*pi*i*num/den}; all scalar arithmetic in this
// library is exact phase arithmetic, never complex floating point.
struct Phase {
  std::int64_t num = 0;
  std::int64_t den = 1;

  friend bool operator==(const Phase&, const Phase&) = default;
  bool is_zero() const { return num == 0; }
};

// Reduce num/den mod 1 to the canonical representative. den may not be 0;
// negative numerators wrap. Throws std::overflow_error if a denominator
// cannot be represented in 64 bits (never reached for group-derived data,
// where denominators divide products of the moduli).
Phase make_phase(std::int64_t num, std::int64_t den);

Phase phase_add(Phase p, Phase q);
Phase phase_neg(Phase p);
Phase phase_sub(Phase p, Phase q);
Phase phase_scale(Phase p, std::int64_t k);

// Multiplicative order of the encoded root of unity (= den in lowest terms).
std::int64_t phase_order(Phase p);

inline Phase operator+(Phase p, Phase q) { return phase_add(p, q); }
inline Phase operator-(Phase p, Phase q) { return phase_sub(p, q); }
inline Phase operator-(Phase p) { return phase_neg(p); }
inline Phase operator*(std::int64_t k, Phase p) { return phase_scale(p, k); }

// Primitive t-th root zeta_t = 1/t.
inline Phase zeta(std::int64_t t) { return make_phase(1, t); }

// "37/60" form, used by reports and test failure messages.
std::string to_string(Phase p);

}  // namespace pma
