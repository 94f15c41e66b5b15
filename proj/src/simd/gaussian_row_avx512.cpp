// Compiled with -mavx512f; only reached after a CPUID check.
#include <immintrin.h>

#include "cmm/simd/gaussian_row.hpp"
#include "exp_poly.hpp"

namespace cmm::simd {

namespace {

inline __m512d exp_poly_avx512(__m512d x) {
  using namespace detail;
  const __mmask8 keep = _mm512_cmp_pd_mask(x, _mm512_set1_pd(exp_floor), _CMP_GE_OQ);
  x = _mm512_max_pd(x, _mm512_set1_pd(exp_floor));
  const __m512d n = _mm512_roundscale_pd(_mm512_mul_pd(x, _mm512_set1_pd(log2e)),
                                         _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m512d r = _mm512_fmadd_pd(n, _mm512_set1_pd(-ln2_hi), x);
  r = _mm512_fmadd_pd(n, _mm512_set1_pd(-ln2_lo), r);
  __m512d poly = _mm512_set1_pd(taylor[0]);
  for (std::size_t k = 1; k < taylor.size(); ++k) {
    poly = _mm512_fmadd_pd(poly, r, _mm512_set1_pd(taylor[k]));
  }
  // poly * 2^n; exact because n is integral and within the normal range.
  return _mm512_maskz_scalef_pd(keep, poly, n);
}

}  // namespace

void gaussian_row_avx512(const QuadraticForm& q, double p, std::span<const double> xs,
                         std::span<double> out) {
  const double b2 = 2.0 * q.axp * p;
  const double cp = q.app * p * p;
  const __m512d vaxx = _mm512_set1_pd(q.axx);
  const __m512d vb2 = _mm512_set1_pd(b2);
  const __m512d vcp = _mm512_set1_pd(cp);
  const __m512d vhalf = _mm512_set1_pd(-0.5);
  const __m512d vscale = _mm512_set1_pd(q.scale);

  const std::size_t n = xs.size();
  for (std::size_t j = 0; j < n; j += 8) {
    const std::size_t left = n - j;
    const __mmask8 lanes = left >= 8 ? __mmask8(0xFF) : __mmask8((1u << left) - 1u);
    const __m512d x = _mm512_maskz_loadu_pd(lanes, xs.data() + j);
    const __m512d t = _mm512_fmadd_pd(vaxx, x, vb2);
    const __m512d arg = _mm512_mul_pd(vhalf, _mm512_fmadd_pd(t, x, vcp));
    _mm512_mask_storeu_pd(out.data() + j, lanes, _mm512_mul_pd(vscale, exp_poly_avx512(arg)));
  }
}

}  // namespace cmm::simd
