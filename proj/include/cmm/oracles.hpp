#pragma once

// Independent reference computations used to check the production paths.
// Nothing in the sweep pipeline calls into this header.

#include <Eigen/Dense>

#include <cstdint>

#include "cmm/model.hpp"

namespace cmm::oracles {

class OracleFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Exact zero-derivative point of the mean-field Langevin equations, decay
/// terms retained: damped Newton on the 7 real unknowns
/// (Re/Im c, Re/Im m1, Re/Im m2, x). Requires the drive pathway.
SteadyState steady_state_oracle(const PhysicalParams& p);

/// C = int_0^inf exp(A t) F exp(A t)^T dt by 10-point Gauss-Legendre on a
/// panel of width ~1/||A||, then horizon doubling
///   C[0, 2H] = C[0, H] + exp(A H) C[0, H] exp(A H)^T
/// until the last doubling adds less than tol * max|C|. Throws AccuracyError
/// if that has not happened once the horizon exceeds `horizon`.
Eigen::MatrixXd lyapunov_integral_oracle(const Eigen::MatrixXd& A, const Eigen::MatrixXd& F,
                                         double horizon, double tol);

struct RandomSystem {
  Eigen::MatrixXd A;
  Eigen::MatrixXd F;
};

/// Gaussian-entry matrix shifted so its spectral abscissa lies in
/// [-1, -0.1]; F is diagonal with entries uniform in [0, 2).
RandomSystem random_stable_system(std::uint64_t seed, int n = 8);

}  // namespace cmm::oracles
