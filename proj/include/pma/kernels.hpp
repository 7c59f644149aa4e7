#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pma/cocycle.hpp"

namespace pma {

// Flat numerator table of a 3-cochain over one common denominator, plus the
// group multiplication table, both in elem_index order:
//   value(a,b,c) = num[(a*n + b)*n + c] / den   (as a phase)
//   index(a*b)   = mul[a*n + b]
// den is capped so the five-term pentagon accumulator fits in int32.
struct CochainTable {
  std::int64_t n = 0;
  std::int32_t den = 1;
  std::vector<std::int32_t> mul;
  std::vector<std::int32_t> num;
};

// Materializes phi. Throws std::overflow_error when the values' common
// denominator leaves no int32 headroom.
CochainTable tabulate3(const Cochain3& phi);

// phi(1,y,z) = phi(x,1,z) = phi(x,y,1) = 0 for all x, y, z.
bool table_is_normalized(const CochainTable& t);

// Index of the first quadruple (lexicographic a,b,c,d packed as
// ((a*n+b)*n+c)*n+d) violating the pentagon identity
//   phi(b,c,d) + phi(a,bc,d) + phi(a,b,c) = phi(ab,c,d) + phi(a,b,cd),
// or -1 when the table is a 3-cocycle. The scalar kernel is the reference;
// pentagon_scan dispatches to the fastest kernel giving identical results.
std::int64_t pentagon_scan_scalar(const CochainTable& t);
std::int64_t pentagon_scan(const CochainTable& t);

#if defined(PMA_HAVE_AVX2)
std::int64_t pentagon_scan_avx2(const CochainTable& t);
#endif

// True when this build carries the avx2 kernel and the cpu supports it.
bool avx2_available();

// Kernel pentagon_scan currently dispatches to: "scalar" or "avx2".
// Overridable through environment variable PMA_KERNEL=scalar|avx2.
std::string pentagon_kernel_name();

}  // namespace pma
