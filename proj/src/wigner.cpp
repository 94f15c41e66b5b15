#include "cmm/wigner.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

#include "cmm/error.hpp"
#include "cmm/gaussian.hpp"

namespace cmm {

namespace {

void require_single_mode(const CovarianceMatrix& C2, const char* who) {
  if (C2.n_modes() != 1) throw DomainError(std::string(who) + ": expects a single-mode matrix");
}

double checked_det(const Eigen::MatrixXd& M, const char* who) {
  const double det = M.determinant();
  if (!(det > 0.0)) throw DomainError(std::string(who) + ": covariance matrix is singular");
  return det;
}

}  // namespace

double ContourEllipse::area() const { return std::numbers::pi * a * b; }

double wigner_value(const CovarianceMatrix& C2, double x, double p) {
  require_single_mode(C2, "wigner_value");
  const Eigen::Matrix2d C = C2.entries();
  const double det = checked_det(C, "wigner_value");
  const Eigen::Vector2d lambda(x, p);
  const double form = lambda.dot(C.inverse() * lambda);
  return std::exp(-0.5 * form) / (2.0 * std::numbers::pi * std::sqrt(det));
}

double wigner_value(const CovarianceMatrix& C, const Eigen::VectorXd& lambda) {
  if (lambda.size() != C.dim()) throw DomainError("wigner_value: point dimension mismatch");
  const double det = checked_det(C.entries(), "wigner_value");
  const auto llt = C.entries().llt();
  if (llt.info() != Eigen::Success) throw DomainError("wigner_value: covariance not positive definite");
  const double form = lambda.dot(llt.solve(lambda));
  const double norm = std::pow(2.0 * std::numbers::pi, C.n_modes()) * std::sqrt(det);
  return std::exp(-0.5 * form) / norm;
}

ContourEllipse contour_ellipse(const CovarianceMatrix& C2) {
  require_single_mode(C2, "contour_ellipse");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(Eigen::Matrix2d(C2.entries()));
  const Eigen::Vector2d ev = es.eigenvalues();  // ascending
  if (!(ev[0] > 0.0)) throw DomainError("contour_ellipse: covariance not positive definite");

  ContourEllipse e;
  e.a = std::sqrt(2.0 * ev[0]);
  e.b = std::sqrt(2.0 * ev[1]);
  if (ev[1] - ev[0] <= 1e-12 * ev[1]) {
    e.theta = 0.0;  // circle: orientation is arbitrary
  } else {
    const Eigen::Vector2d v = es.eigenvectors().col(0);
    double theta = std::atan2(v[1], v[0]);
    if (theta < 0.0) theta += std::numbers::pi;
    if (theta >= std::numbers::pi) theta -= std::numbers::pi;
    e.theta = theta;
  }
  return e;
}

WignerGrid wigner_grid(const CovarianceMatrix& C2, double half_range_sigmas, int resolution,
                       simd::RowKernel kernel) {
  require_single_mode(C2, "wigner_grid");
  if (resolution < 2) throw DomainError("wigner_grid: resolution must be >= 2");
  if (!(half_range_sigmas > 0.0)) throw DomainError("wigner_grid: range must be > 0");
  const Eigen::Matrix2d C = C2.entries();
  const double det = checked_det(C, "wigner_grid");
  const Eigen::Matrix2d inv = C.inverse();

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(C);
  const double half = half_range_sigmas * std::sqrt(es.eigenvalues()[1]);

  WignerGrid g;
  g.mode = C2.modes()[0];
  g.x.resize(resolution);
  for (int j = 0; j < resolution; ++j) {
    g.x[j] = -half + 2.0 * half * j / (resolution - 1);
  }
  g.p = g.x;
  g.contour = contour_ellipse(C2);
  g.peak = 1.0 / (2.0 * std::numbers::pi * std::sqrt(det));

  const simd::QuadraticForm q{inv(0, 0), 0.5 * (inv(0, 1) + inv(1, 0)), inv(1, 1), g.peak};
  // Row-major scratch so each row is contiguous for the kernel.
  std::vector<double> row(resolution);
  g.W.resize(resolution, resolution);
  for (int i = 0; i < resolution; ++i) {
    kernel(q, g.p[i], g.x, row);
    for (int j = 0; j < resolution; ++j) g.W(i, j) = row[j];
  }
  return g;
}

double grid_integral(const WignerGrid& g) {
  const auto n = static_cast<int>(g.x.size());
  const auto m = static_cast<int>(g.p.size());
  const double hx = g.x[1] - g.x[0];
  const double hp = g.p[1] - g.p[0];
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    const double wi = (i == 0 || i == m - 1) ? 0.5 : 1.0;
    for (int j = 0; j < n; ++j) {
      const double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      sum += wi * wj * g.W(i, j);
    }
  }
  return sum * hx * hp;
}

SqueezingReport quadrature_squeezing(const CovarianceMatrix& C2) {
  require_single_mode(C2, "quadrature_squeezing");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(Eigen::Matrix2d(C2.entries()));
  SqueezingReport r;
  r.min_variance = es.eigenvalues()[0];
  r.is_squeezed = r.min_variance < 0.5 - 1e-9;
  return r;
}

}  // namespace cmm
