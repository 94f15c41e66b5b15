#pragma once

// Gaussian Wigner functions of zero-mean fluctuation states.

#include <Eigen/Dense>

#include <vector>

#include "cmm/covariance.hpp"
#include "cmm/simd/gaussian_row.hpp"

namespace cmm {

/// The 1/e contour of a single-mode Wigner function: points with
/// lambda^T C^-1 lambda = 2. Semi-axis `a` lies along angle `theta` in
/// [0, pi) (the least-variance direction), `b` perpendicular to it.
struct ContourEllipse {
  double a = 0.0;
  double b = 0.0;
  double theta = 0.0;

  double area() const;
};

struct WignerGrid {
  Mode mode = Mode::c;
  std::vector<double> x;  // column coordinates
  std::vector<double> p;  // row coordinates
  Eigen::MatrixXd W;      // W(i, j) at (x[j], p[i])
  ContourEllipse contour;
  double peak = 0.0;      // W at the origin
};

/// W(x, p) = exp(-lambda^T C^-1 lambda / 2) / (2 pi sqrt(det C)).
double wigner_value(const CovarianceMatrix& C2, double x, double p);

/// n-mode form: exp(-lambda^T C^-1 lambda / 2) / sqrt((2 pi)^(2n) det C).
double wigner_value(const CovarianceMatrix& C, const Eigen::VectorXd& lambda);

ContourEllipse contour_ellipse(const CovarianceMatrix& C2);

/// Square grid over +-half_range_sigmas * sqrt(max eigenvalue of C2) on both
/// axes, `resolution` points per axis, evaluated with the given row kernel.
WignerGrid wigner_grid(const CovarianceMatrix& C2, double half_range_sigmas = 5.0,
                       int resolution = 201, simd::RowKernel kernel = simd::row_kernel());

/// Trapezoidal integral of the grid.
double grid_integral(const WignerGrid& grid);

struct SqueezingReport {
  double min_variance = 0.5;
  bool is_squeezed = false;  // min_variance < 1/2 - 1e-9
};

SqueezingReport quadrature_squeezing(const CovarianceMatrix& C2);

}  // namespace cmm
