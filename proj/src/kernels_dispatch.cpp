#include <cstdlib>
#include <cstring>

#include "mfg/kernels.hpp"

namespace mfg::simd {

#ifdef MFG_BUILD_AVX2
const Kernels& avx2_kernels_impl();
#endif

namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

}  // namespace

const Kernels* avx2_kernels() {
#ifdef MFG_BUILD_AVX2
  if (cpu_has_avx2_fma()) return &avx2_kernels_impl();
#endif
  return nullptr;
}

const Kernels& active_kernels() {
  static const Kernels* chosen = [] {
    const char* env = std::getenv("MFG_KERNELS");
    if (env && std::strcmp(env, "scalar") == 0) return &scalar_kernels();
    const Kernels* v = avx2_kernels();
    if (env && std::strcmp(env, "avx2") == 0 && v) return v;
    if (env && std::strcmp(env, "avx2") == 0) return &scalar_kernels();
    return v ? v : &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace mfg::simd
