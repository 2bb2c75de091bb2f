#include <cstdlib>
#include <cstring>

#include "topowalk/simd/kernels.hpp"

namespace topowalk::simd {

#if defined(TOPOWALK_HAVE_AVX2)
namespace detail {
const KernelSet& avx2_kernel_set() noexcept;
}
#endif

const KernelSet* avx2_kernels() noexcept {
#if defined(TOPOWALK_HAVE_AVX2)
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok ? &detail::avx2_kernel_set() : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active_kernels() noexcept {
  static const KernelSet& chosen = []() -> const KernelSet& {
    const char* env = std::getenv("TOPOWALK_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return scalar_kernels();
    if (const KernelSet* wide = avx2_kernels()) return *wide;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace topowalk::simd
