#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "cmm/simd/gaussian_row.hpp"

using namespace cmm::simd;

namespace {

double rel_err(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(b), std::numeric_limits<double>::min());
}

}  // namespace

TEST_CASE("polynomial exp against std::exp") {
  double worst = 0.0;
  for (double x = -708.0; x <= 0.0; x += 0.01337) worst = std::max(worst, rel_err(exp_poly(x), std::exp(x)));
  CHECK(worst <= 1e-14);
  CHECK(exp_poly(0.0) == 1.0);
  CHECK(exp_poly(-800.0) == 0.0);
  CHECK(exp_poly(-std::numeric_limits<double>::infinity()) == 0.0);
}

TEST_CASE("scalar kernel is the textbook formula") {
  const QuadraticForm q{2.0, -0.3, 0.7, 0.25};
  const std::vector<double> xs = {-3.0, -0.5, 0.0, 1.25, 4.0};
  std::vector<double> out(xs.size());
  gaussian_row_scalar(q, 0.4, xs, out);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double x = xs[j], p = 0.4;
    const double want = 0.25 * std::exp(-0.5 * (2.0 * x * x - 0.6 * x * p + 0.7 * p * p));
    CHECK(out[j] == doctest::Approx(want).epsilon(1e-15));
  }
}

TEST_CASE("vector kernels match the scalar reference") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (Isa isa : {Isa::avx2, Isa::avx512}) {
    if (!isa_supported(isa)) {
      MESSAGE("skipping ", isa_name(isa), ": not supported on this CPU");
      continue;
    }
    const RowKernel k = row_kernel(isa);
    // Odd lengths exercise the masked / scalar tails.
    for (std::size_t n : {1u, 3u, 4u, 7u, 8u, 9u, 15u, 16u, 17u, 201u, 1001u}) {
      for (int trial = 0; trial < 20; ++trial) {
        const double axx = 0.05 + std::abs(u(rng)) * 4;
        const double app = 0.05 + std::abs(u(rng)) * 4;
        const double axp = u(rng) * std::sqrt(axx * app) * 0.9;
        const QuadraticForm q{axx, axp, app, 0.3};
        const double p = 6 * u(rng);
        std::vector<double> xs(n), ref(n), got(n);
        for (auto& x : xs) x = 12 * u(rng);
        gaussian_row_scalar(q, p, xs, ref);
        k(q, p, xs, got);
        for (std::size_t j = 0; j < n; ++j) {
          if (ref[j] < 1e-300) {
            CHECK(got[j] < 1e-290);
          } else {
            // exp_poly error plus rounding of the exponent argument.
            const double x = xs[j];
            const double arg = 0.5 * (axx * x * x + 2 * axp * x * p + app * p * p);
            CHECK(rel_err(got[j], ref[j]) <= 2e-14 + 4e-16 * arg);
          }
        }
      }
    }
  }
}

TEST_CASE("deep tails underflow to zero rather than garbage") {
  const QuadraticForm q{1.0, 0.0, 1.0, 1.0};
  std::vector<double> xs = {40.0, 50.0, 1e3, 1e10}, out(xs.size(), -1.0);
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::avx512}) {
    row_kernel(isa)(q, 0.0, xs, out);
    CHECK(out[1] == 0.0);
    CHECK(out[2] == 0.0);
    CHECK(out[3] == 0.0);
    CHECK(out[0] >= 0.0);
  }
}

TEST_CASE("dispatch") {
  CHECK(isa_supported(Isa::scalar));
  CHECK(row_kernel(Isa::scalar) == &gaussian_row_scalar);
  CHECK(isa_supported(best_isa()));
  CHECK(row_kernel() == row_kernel(selected_isa()));
  CHECK(isa_name(Isa::avx512) == "avx512");
}
