#include <cstdlib>
#include <string>

#include "cmm/simd/gaussian_row.hpp"

namespace cmm::simd {

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
#if defined(CMM_HAVE_X86_KERNELS)
    case Isa::avx2:
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    case Isa::avx512:
      return __builtin_cpu_supports("avx512f");
#else
    default:
      return false;
#endif
  }
  return false;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::avx512: return "avx512";
  }
  return "?";
}

Isa best_isa() {
  if (isa_supported(Isa::avx512)) return Isa::avx512;
  if (isa_supported(Isa::avx2)) return Isa::avx2;
  return Isa::scalar;
}

Isa selected_isa() {
  if (const char* env = std::getenv("CMM_SIMD")) {
    const std::string want(env);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::avx512}) {
      if (want == isa_name(isa) && isa_supported(isa)) return isa;
    }
  }
  return best_isa();
}

RowKernel row_kernel(Isa isa) {
  if (!isa_supported(isa)) return &gaussian_row_scalar;
  switch (isa) {
#if defined(CMM_HAVE_X86_KERNELS)
    case Isa::avx2: return &gaussian_row_avx2;
    case Isa::avx512: return &gaussian_row_avx512;
#endif
    default: return &gaussian_row_scalar;
  }
}

RowKernel row_kernel() {
  static const RowKernel k = row_kernel(selected_isa());
  return k;
}

}  // namespace cmm::simd
