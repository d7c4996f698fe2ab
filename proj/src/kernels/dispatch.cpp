#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace qkt::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(QKT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& select() {
  if (const char* env = std::getenv("QKT_SIMD"); env != nullptr && std::string_view(env) == "scalar") {
    return detail::kScalarTable;
  }
  if (const KernelTable* t = avx2()) return *t;
  return detail::kScalarTable;
}

}  // namespace

const KernelTable& scalar() { return detail::kScalarTable; }

const KernelTable* avx2() {
#if defined(QKT_HAVE_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok ? &detail::kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace qkt::kernels
