#pragma once

// Row kernels for evaluating a bivariate Gaussian
//   out[j] = scale * exp(-0.5 * (axx x_j^2 + 2 axp x_j p + app p^2))
// along one row (fixed p) of a quadrature grid. The scalar kernel is the
// reference; the vector kernels share one polynomial exp and agree with it
// to a few ulp. Selection happens once at runtime from CPUID, or from the
// CMM_SIMD environment variable (scalar | avx2 | avx512) when set.

#include <span>
#include <string_view>

namespace cmm::simd {

struct QuadraticForm {
  double axx = 0.0;
  double axp = 0.0;
  double app = 0.0;
  double scale = 1.0;
};

enum class Isa { scalar, avx2, avx512 };

using RowKernel = void (*)(const QuadraticForm&, double p, std::span<const double> xs,
                           std::span<double> out);

void gaussian_row_scalar(const QuadraticForm& q, double p, std::span<const double> xs,
                         std::span<double> out);
#if defined(CMM_HAVE_X86_KERNELS)
void gaussian_row_avx2(const QuadraticForm& q, double p, std::span<const double> xs,
                       std::span<double> out);
void gaussian_row_avx512(const QuadraticForm& q, double p, std::span<const double> xs,
                         std::span<double> out);
#endif

/// exp(x) for x <= 0 via the kernels' polynomial; returns 0 below -708.
double exp_poly(double x);

bool isa_supported(Isa isa);
std::string_view isa_name(Isa isa);
Isa best_isa();
/// best_isa(), unless CMM_SIMD names a supported ISA.
Isa selected_isa();
/// Kernel for `isa`, or the scalar kernel if the CPU lacks it.
RowKernel row_kernel(Isa isa);
RowKernel row_kernel();

}  // namespace cmm::simd
