#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace pma {

// One row: sum_j coeffs[j] * x_j ≡ rhs (mod modulus), modulus >= 1.
struct Congruence {
  std::vector<std::int64_t> coeffs;
  std::int64_t rhs = 0;
  std::int64_t modulus = 1;
};

// Solves a linear congruence system with per-row moduli. Returns one solution
// with every x_j the minimal nonnegative representative produced by the
// deterministic elimination below, or nullopt when the system is insolvable.
//
// Method: split lcm(moduli) into prime powers; for each prime power q solve
// the system mod q by Gaussian elimination over Z/q (equations in input
// order; pivot = first coefficient that is a unit mod q, otherwise the entry
// of minimal p-valuation; free variables take 0), then recombine by CRT.
// Deterministic by construction: no randomization, ties broken by input order.
std::optional<std::vector<std::int64_t>> solve_congruence_system(
    const std::vector<Congruence>& rows, std::size_t unknowns);

}  // namespace pma
