#pragma once

#include <Eigen/Dense>

#include "cmm/covariance.hpp"
#include "cmm/model.hpp"

namespace cmm {

/// Steady-state covariance from A C + C A^T + F = 0.
///
/// Solved as the dense Kronecker system (I (x) A + A (x) I) vec(C) = -vec(F)
/// with partial-pivot LU and up to three refinement sweeps. The result is
/// symmetrized and guaranteed to satisfy
///   max|A C + C A^T + F| <= 1e-10 * max|F|.
///
/// Throws StabilityError (before solving) if A has an eigenvalue with
/// non-negative real part, NumericalError carrying the reciprocal condition
/// estimate if the residual bound cannot be met.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& F);

/// Same, for the model matrices; modes are labelled c, m1, m2, b.
CovarianceMatrix solve_lyapunov(const DriftMatrix& A, const DiffusionMatrix& F);

/// max|A C + C A^T + F|.
double lyapunov_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C,
                         const Eigen::MatrixXd& F);

}  // namespace cmm
