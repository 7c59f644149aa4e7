#include <cstdlib>
#include <cstring>

#include "pma/kernels.hpp"

namespace pma {

bool avx2_available() {
#if defined(PMA_HAVE_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

// Resolved once; PMA_KERNEL=scalar|avx2 overrides the cpu probe (requesting
// avx2 on a machine without it throws rather than degrading silently).
bool use_avx2() {
  static const bool value = [] {
    const char* req = std::getenv("PMA_KERNEL");
    bool have = avx2_available();
    if (req == nullptr || *req == '\0') return have;
    if (std::strcmp(req, "scalar") == 0) return false;
    if (std::strcmp(req, "avx2") == 0) {
      if (!have) throw std::runtime_error("PMA_KERNEL=avx2 requested but unavailable");
      return true;
    }
    throw std::runtime_error("PMA_KERNEL must be scalar or avx2");
  }();
  return value;
}

}  // namespace

std::int64_t pentagon_scan(const CochainTable& t) {
#if defined(PMA_HAVE_AVX2)
  if (use_avx2()) return pentagon_scan_avx2(t);
#endif
  return pentagon_scan_scalar(t);
}

std::string pentagon_kernel_name() { return use_avx2() ? "avx2" : "scalar"; }

}  // namespace pma
