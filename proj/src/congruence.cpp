#include "pma/congruence.hpp"

#include <numeric>
#include <stdexcept>

#include "intmat.hpp"

namespace pma {

namespace {
using intmat::Mat;
using intmat::checked64;
}  // namespace

// A x = b (mod n) row by row is the integer system [A | diag(n)] w = b.
// Column echelon with a tracked transform gives one solution and a basis of
// the kernel; projecting the kernel to the x block yields the lattice of
// solution translations. That lattice contains lcm(n)*Z^u, so its echelon
// form has a positive pivot in every row and Hermite reduction of the
// particular solution lands every coordinate in [0, pivot): the canonical
// minimal nonnegative answer.
std::optional<std::vector<std::int64_t>> solve_congruence_system(
    const std::vector<Congruence>& rows, std::size_t unknowns) {
  const std::size_t r = rows.size();
  for (const auto& row : rows) {
    if (row.coeffs.size() != unknowns) throw std::invalid_argument("congruence row width mismatch");
    if (row.modulus < 1) throw std::invalid_argument("congruence modulus must be positive");
  }
  if (r == 0) return std::vector<std::int64_t>(unknowns, 0);
  std::int64_t L = 1;
  for (const auto& row : rows) {
    std::int64_t g = std::gcd(L, row.modulus);
    L = checked64(__int128(L / g) * row.modulus);
  }

  Mat M(r, std::vector<std::int64_t>(unknowns + r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < unknowns; ++j) M[i][j] = rows[i].coeffs[j];
    M[i][unknowns + i] = rows[i].modulus;
  }
  auto ech = intmat::col_echelon(std::move(M));

  // Forward-substitute H t = b along the pivots, then insist the residual of
  // every row vanishes (rows that never produced a pivot included).
  std::vector<std::int64_t> t(unknowns + r, 0);
  std::vector<__int128> resid(r);
  for (std::size_t i = 0; i < r; ++i) resid[i] = rows[i].rhs;
  for (auto [pr, pc] : ech.pivots) {
    if (resid[pr] % ech.H[pr][pc] != 0) return std::nullopt;
    t[pc] = checked64(resid[pr] / ech.H[pr][pc]);
    for (std::size_t i = 0; i < r; ++i) resid[i] -= __int128(ech.H[i][pc]) * t[pc];
  }
  for (std::size_t i = 0; i < r; ++i)
    if (resid[i] != 0) return std::nullopt;

  std::vector<std::int64_t> x(unknowns, 0);
  for (std::size_t j = 0; j < unknowns; ++j) {
    __int128 s = 0;
    for (std::size_t c = 0; c < unknowns + r; ++c) s += __int128(ech.U[j][c]) * t[c];
    x[j] = checked64(s);
  }

  // Kernel generators are the U columns past the pivots; add L*e_j explicitly
  // so the projected lattice is visibly full rank even for r = 0.
  const std::size_t npiv = ech.pivots.size();
  Mat K(unknowns, std::vector<std::int64_t>(0));
  for (std::size_t j = 0; j < unknowns; ++j) {
    for (std::size_t c = npiv; c < unknowns + r; ++c) K[j].push_back(ech.U[j][c]);
    for (std::size_t c = 0; c < unknowns; ++c) K[j].push_back(c == j ? L : 0);
  }
  auto lat = intmat::col_echelon(std::move(K));
  for (auto [pr, pc] : lat.pivots) {
    std::int64_t d = lat.H[pr][pc];
    // floor division keeps the result nonnegative for negative x too
    std::int64_t q = x[pr] / d - ((x[pr] % d != 0 && x[pr] < 0) ? 1 : 0);
    if (q != 0)
      for (std::size_t i = 0; i < unknowns; ++i)
        x[i] = checked64(__int128(x[i]) - __int128(q) * lat.H[i][pc]);
  }
  return x;
}

}  // namespace pma
