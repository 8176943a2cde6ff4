#include <cstdlib>
#include <cstring>

#include "cupset/simd/kernels.hpp"

namespace cupset::simd {

const KernelTable* avx2_kernels_impl();

const KernelTable* avx2_kernels() {
#if defined(__x86_64__) || defined(__i386__)
  if (!__builtin_cpu_supports("avx2")) return nullptr;
  return avx2_kernels_impl();
#else
  return nullptr;
#endif
}

const KernelTable& kernels() {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("CUPSET_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return &scalar_kernels();
    const KernelTable* fast = avx2_kernels();
    return fast != nullptr ? fast : &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace cupset::simd
