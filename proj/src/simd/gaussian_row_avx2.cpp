// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include <immintrin.h>

#include "cmm/simd/gaussian_row.hpp"
#include "exp_poly.hpp"

namespace cmm::simd {

namespace {

inline __m256d exp_poly_avx2(__m256d x) {
  using namespace detail;
  const __m256d underflow = _mm256_cmp_pd(x, _mm256_set1_pd(exp_floor), _CMP_LT_OQ);
  x = _mm256_max_pd(x, _mm256_set1_pd(exp_floor));
  const __m256d n =
      _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(log2e)),
                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fmadd_pd(n, _mm256_set1_pd(-ln2_hi), x);
  r = _mm256_fmadd_pd(n, _mm256_set1_pd(-ln2_lo), r);
  __m256d poly = _mm256_set1_pd(taylor[0]);
  for (std::size_t k = 1; k < taylor.size(); ++k) {
    poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(taylor[k]));
  }
  // n is integral and |n| < 2^51: adding 1.5 * 2^52 puts it in the low mantissa bits.
  const __m256d magic = _mm256_set1_pd(0x1.8p52);
  const __m256i n_int =
      _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(n, magic)), _mm256_castpd_si256(magic));
  const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n_int, _mm256_set1_epi64x(1023)), 52);
  const __m256d result = _mm256_mul_pd(poly, _mm256_castsi256_pd(bits));
  return _mm256_andnot_pd(underflow, result);
}

}  // namespace

void gaussian_row_avx2(const QuadraticForm& q, double p, std::span<const double> xs,
                       std::span<double> out) {
  const double b2 = 2.0 * q.axp * p;
  const double cp = q.app * p * p;
  const __m256d vaxx = _mm256_set1_pd(q.axx);
  const __m256d vb2 = _mm256_set1_pd(b2);
  const __m256d vcp = _mm256_set1_pd(cp);
  const __m256d vhalf = _mm256_set1_pd(-0.5);
  const __m256d vscale = _mm256_set1_pd(q.scale);

  std::size_t j = 0;
  const std::size_t n = xs.size();
  for (; j + 4 <= n; j += 4) {
    const __m256d x = _mm256_loadu_pd(xs.data() + j);
    const __m256d t = _mm256_fmadd_pd(vaxx, x, vb2);
    const __m256d arg = _mm256_mul_pd(vhalf, _mm256_fmadd_pd(t, x, vcp));
    _mm256_storeu_pd(out.data() + j, _mm256_mul_pd(vscale, exp_poly_avx2(arg)));
  }
  for (; j < n; ++j) {
    out[j] = q.scale * detail::exp_poly_scalar(detail::quad_arg(q.axx, b2, cp, xs[j]));
  }
}

}  // namespace cmm::simd
