#pragma once

// exp on (-708, 0]: x = n ln2 + r, |r| <= ln2 / 2, exp(r) by its degree-13
// Taylor polynomial (truncation below 1e-17), then scaling by 2^n. Every
// kernel uses these constants in the same operation order so the vector
// paths and their scalar tails round identically.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>

namespace cmm::simd::detail {

inline constexpr double log2e = 1.4426950408889634074;
inline constexpr double ln2_hi = 6.93147180369123816490e-01;
inline constexpr double ln2_lo = 1.90821492927058770002e-10;
inline constexpr double exp_floor = -708.0;

// 1/k!, highest degree first for Horner.
inline constexpr std::array<double, 14> taylor = {
    1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0,
    1.0 / 362880.0,     1.0 / 40320.0,     1.0 / 5040.0,     1.0 / 720.0,
    1.0 / 120.0,        1.0 / 24.0,        1.0 / 6.0,        1.0 / 2.0,
    1.0,                1.0};

inline double exp_poly_scalar(double x) {
  if (x < exp_floor) return 0.0;
  const double n = std::nearbyint(x * log2e);
  double r = std::fma(n, -ln2_hi, x);
  r = std::fma(n, -ln2_lo, r);
  double poly = taylor[0];
  for (std::size_t k = 1; k < taylor.size(); ++k) poly = std::fma(poly, r, taylor[k]);
  const std::int64_t bits = (static_cast<std::int64_t>(n) + 1023) << 52;
  double two_n;
  std::memcpy(&two_n, &bits, sizeof two_n);
  return poly * two_n;
}

// Exponent argument -0.5 * q for grid point x; b2 = 2 axp p, cp = app p^2.
inline double quad_arg(double axx, double b2, double cp, double x) {
  const double t = std::fma(axx, x, b2);
  return -0.5 * std::fma(t, x, cp);
}

}  // namespace cmm::simd::detail
