#include "doctest.h"

#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "pma/congruence.hpp"

using namespace pma;

namespace {

bool satisfies(const std::vector<Congruence>& rows, const std::vector<std::int64_t>& x) {
  for (const auto& r : rows) {
    __int128 s = -__int128(r.rhs);
    for (std::size_t c = 0; c < x.size(); ++c) s += __int128(r.coeffs[c]) * x[c];
    if ((((s % r.modulus) + r.modulus) % r.modulus) != 0) return false;
  }
  return true;
}

// Scans the full residue box [0,L)^n, L = lcm of the moduli. Only usable for
// tiny systems, which is the point: it cannot be wrong.
std::optional<std::vector<std::int64_t>> brute_solve(const std::vector<Congruence>& rows,
                                                     std::size_t n) {
  std::int64_t L = 1;
  for (const auto& r : rows) L = std::lcm(L, r.modulus);
  std::vector<std::int64_t> x(n, 0);
  while (true) {
    if (satisfies(rows, x)) return x;
    std::size_t k = n;
    while (k > 0 && ++x[k - 1] == L) x[--k] = 0;
    if (k == 0) return std::nullopt;
  }
}

}  // namespace

TEST_CASE("congruence solver on pinned examples") {
  // 2x = 0 (mod 4): x = 0 is the minimal solution.
  CHECK(solve_congruence_system({{{2}, 0, 4}}, 1) == std::vector<std::int64_t>{0});
  // 2x = 1 (mod 4) is insolvable.
  CHECK_FALSE(solve_congruence_system({{{2}, 1, 4}}, 1).has_value());
  // x = 1 (mod 2), 3x = 0 (mod 9): x = 3, not the naive CRT value 9.
  CHECK(solve_congruence_system({{{1}, 1, 2}, {{3}, 0, 9}}, 1) ==
        std::vector<std::int64_t>{3});
  // No rows at all: the zero vector.
  CHECK(solve_congruence_system({}, 3) == std::vector<std::int64_t>{0, 0, 0});
}

TEST_CASE("coupled variables stay jointly consistent after reduction") {
  // x2 is pinned mod 4 only up to its 2-adic tail, and reducing x1 and x2
  // independently to their determined moduli would break row one.
  std::vector<Congruence> rows = {
      {{1, 1}, 0, 4},
      {{0, 2}, 2, 4},
      {{0, 1}, 0, 3},
  };
  auto x = solve_congruence_system(rows, 2);
  REQUIRE(x.has_value());
  CHECK(satisfies(rows, *x));
}

TEST_CASE("solver agrees with residue-box scan") {
  std::mt19937_64 rng(2026);
  const std::int64_t mods[] = {2, 3, 4, 5, 8, 9, 12};
  for (int it = 0; it < 400; ++it) {
    std::size_t n = 1 + it % 3;
    std::size_t nrows = 1 + static_cast<std::size_t>(rng() % 4);
    std::vector<Congruence> rows;
    for (std::size_t r = 0; r < nrows; ++r) {
      Congruence c;
      c.modulus = mods[rng() % 7];
      c.rhs = static_cast<std::int64_t>(rng() % 30) - 15;
      for (std::size_t j = 0; j < n; ++j)
        c.coeffs.push_back(static_cast<std::int64_t>(rng() % 13) - 6);
      rows.push_back(std::move(c));
    }
    auto fast = solve_congruence_system(rows, n);
    auto slow = brute_solve(rows, n);
    CHECK(fast.has_value() == slow.has_value());
    if (fast) CHECK(satisfies(rows, *fast));
  }
}

TEST_CASE("solutions are reported at the determined modulus") {
  // x = 2 (mod 4) inside modulus 8: answer is 2, not 2 + 4k.
  CHECK(solve_congruence_system({{{2}, 4, 8}}, 1) == std::vector<std::int64_t>{2});
  // Hidden single prime: 6x = 3 (mod 9) means 2x = 1 (mod 3), x = 2.
  CHECK(solve_congruence_system({{{6}, 3, 9}}, 1) == std::vector<std::int64_t>{2});
  // Determined only mod 2 out of 12.
  CHECK(solve_congruence_system({{{6}, 6, 12}}, 1) == std::vector<std::int64_t>{1});
}

TEST_CASE("solver input validation") {
  CHECK_THROWS_AS(solve_congruence_system({{{1, 2}, 0, 4}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(solve_congruence_system({{{1}, 0, 0}}, 1), std::invalid_argument);
}
