#include <cstdlib>
#include <cstring>

#include "pess/kernels.hpp"

namespace pess::kernels {

namespace {

const KernelSet& choose() {
  const char* env = std::getenv("PESS_KERNEL");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return scalar_kernels();
    if (std::strcmp(env, "avx2") == 0 && avx2_kernels() != nullptr)
      return *avx2_kernels();
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_kernels() != nullptr && __builtin_cpu_supports("avx2"))
    return *avx2_kernels();
#endif
  return scalar_kernels();
}

}  // namespace

const KernelSet& active_kernels() {
  static const KernelSet& set = choose();
  return set;
}

}  // namespace pess::kernels
