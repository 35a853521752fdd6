#include <cstdlib>
#include <string_view>

#include "trilasso/kernels.hpp"

namespace trilasso::kernels {

#ifndef TRILASSO_HAVE_AVX2
const KernelTable* avx2() { return nullptr; }
#endif

#ifndef TRILASSO_HAVE_NEON
const KernelTable* neon() { return nullptr; }
#endif

std::vector<const KernelTable*> supported() {
  std::vector<const KernelTable*> out{&scalar()};
#if defined(TRILASSO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) out.push_back(avx2());
#endif
#if defined(TRILASSO_HAVE_NEON)
  // NEON is mandatory on AArch64.
  out.push_back(neon());
#endif
  return out;
}

namespace {

const KernelTable& select() {
  if (const char* env = std::getenv("TRILASSO_SIMD"); env && std::string_view(env) == "scalar")
    return scalar();
  return *supported().back();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace trilasso::kernels
