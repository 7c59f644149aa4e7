#pragma once

// Small exact integer-matrix helpers shared by the congruence solver and the
// lattice computations (kernels, Hermite forms, support indices). Matrices
// are dense row-major vectors of int64; every product goes through __int128
// and overflows throw instead of wrapping.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pma::intmat {

using Mat = std::vector<std::vector<std::int64_t>>;

inline std::int64_t checked64(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("integer matrix overflow");
  return static_cast<std::int64_t>(v);
}

// col_j -= q * col_k
inline void col_axpy(Mat& M, std::size_t j, std::size_t k, std::int64_t q) {
  for (auto& row : M) row[j] = checked64(__int128(row[j]) - __int128(q) * row[k]);
}

inline Mat identity(std::size_t n) {
  Mat U(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) U[i][i] = 1;
  return U;
}

// Column echelon form by unimodular column operations: after the call,
// pivots lists (row, col) pairs with strictly increasing rows and cols
// 0,1,2,..., each pivot entry positive, and every entry of a pivot row to
// the right of its pivot is zero. U accumulates the column operations, so
// (original M) * U == (echelon M). Entries above pivots are NOT reduced.
struct ColEchelon {
  Mat H;
  Mat U;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
};

inline ColEchelon col_echelon(Mat M) {
  const std::size_t rows = M.size();
  const std::size_t cols = rows ? M[0].size() : 0;
  ColEchelon out;
  out.U = identity(cols);
  std::size_t pc = 0;
  for (std::size_t r = 0; r < rows && pc < cols; ++r) {
    // gcd sweep: shrink the row until a single nonzero remains at pc
    while (true) {
      std::size_t best = cols;
      for (std::size_t j = pc; j < cols; ++j) {
        if (M[r][j] == 0) continue;
        if (best == cols || std::abs(M[r][j]) < std::abs(M[r][best])) best = j;
      }
      if (best == cols) break;  // row is zero from pc on: no pivot here
      if (best != pc) {
        for (auto& row : M) std::swap(row[pc], row[best]);
        for (auto& row : out.U) std::swap(row[pc], row[best]);
      }
      bool clean = true;
      for (std::size_t j = pc + 1; j < cols; ++j) {
        if (M[r][j] == 0) continue;
        std::int64_t q = M[r][j] / M[r][pc];  // truncating: remainder shrinks
        if (q != 0) {
          col_axpy(M, j, pc, q);
          col_axpy(out.U, j, pc, q);
        }
        if (M[r][j] != 0) clean = false;
      }
      if (clean) break;
    }
    if (pc < cols && M[r][pc] != 0) {
      if (M[r][pc] < 0) {
        for (auto& row : M) row[pc] = -row[pc];
        for (auto& row : out.U) row[pc] = -row[pc];
      }
      out.pivots.emplace_back(r, pc);
      ++pc;
    }
  }
  out.H = std::move(M);
  return out;
}

}  // namespace pma::intmat
