#include <immintrin.h>

#include "pma/kernels.hpp"

namespace pma {

// Same loop as the scalar kernel with the innermost d dimension in 8-lane
// int32 vectors. t1, t2, t4 are contiguous rows, t5 = phi(a,b,cd) is the
// one gather through the product table row of c. A block that reports a
// violation is re-scanned scalar so the returned index is identical to the
// reference kernel's.
std::int64_t pentagon_scan_avx2(const CochainTable& t) {
  const std::int64_t n = t.n;
  const std::int32_t L = t.den;
  const std::int32_t* mul = t.mul.data();
  const std::int32_t* num = t.num.data();
  const __m256i vL1 = _mm256_set1_epi32(L);
  const __m256i vL2 = _mm256_set1_epi32(2 * L);
  const __m256i vL3 = _mm256_set1_epi32(3 * L);
  const __m256i vL4 = _mm256_set1_epi32(4 * L);
  for (std::int64_t a = 0; a < n; ++a)
    for (std::int64_t b = 0; b < n; ++b) {
      const std::int32_t ab = mul[a * n + b];
      const std::int32_t* row5 = num + (a * n + b) * n;
      for (std::int64_t c = 0; c < n; ++c) {
        const std::int32_t* r1 = num + (b * n + c) * n;
        const std::int32_t* r2 = num + (a * n + mul[b * n + c]) * n;
        const std::int32_t* r4 = num + (ab * n + c) * n;
        const std::int32_t* cd = mul + c * n;
        const std::int32_t fixed = row5[c] + 2 * L;
        const __m256i vfixed = _mm256_set1_epi32(fixed);
        std::int64_t d = 0;
        for (; d + 8 <= n; d += 8) {
          __m256i v1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r1 + d));
          __m256i v2 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r2 + d));
          __m256i v4 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r4 + d));
          __m256i vcd = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(cd + d));
          __m256i v5 = _mm256_i32gather_epi32(row5, vcd, 4);
          __m256i r = _mm256_sub_epi32(
              _mm256_add_epi32(_mm256_add_epi32(v1, v2), vfixed), _mm256_add_epi32(v4, v5));
          // r in (0, 5L); r % L == 0 iff r is one of L, 2L, 3L, 4L
          __m256i ok = _mm256_or_si256(
              _mm256_or_si256(_mm256_cmpeq_epi32(r, vL1), _mm256_cmpeq_epi32(r, vL2)),
              _mm256_or_si256(_mm256_cmpeq_epi32(r, vL3), _mm256_cmpeq_epi32(r, vL4)));
          if (_mm256_movemask_ps(_mm256_castsi256_ps(ok)) != 0xFF) {
            for (std::int64_t e = d; e < d + 8; ++e) {
              std::int32_t rr = r1[e] + r2[e] + fixed - r4[e] - row5[cd[e]];
              if (rr % L != 0) return ((a * n + b) * n + c) * n + e;
            }
          }
        }
        for (; d < n; ++d) {
          std::int32_t rr = r1[d] + r2[d] + fixed - r4[d] - row5[cd[d]];
          if (rr % L != 0) return ((a * n + b) * n + c) * n + d;
        }
      }
    }
  return -1;
}

}  // namespace pma
