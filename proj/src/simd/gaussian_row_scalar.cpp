#include <cmath>

#include "cmm/simd/gaussian_row.hpp"
#include "exp_poly.hpp"

namespace cmm::simd {

void gaussian_row_scalar(const QuadraticForm& q, double p, std::span<const double> xs,
                         std::span<double> out) {
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double x = xs[j];
    const double form = q.axx * x * x + 2.0 * q.axp * x * p + q.app * p * p;
    out[j] = q.scale * std::exp(-0.5 * form);
  }
}

double exp_poly(double x) { return detail::exp_poly_scalar(x); }

}  // namespace cmm::simd
