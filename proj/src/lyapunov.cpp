#include "cmm/lyapunov.hpp"

#include <sstream>

namespace cmm {

namespace {

Eigen::MatrixXd kronecker_operator(const Eigen::MatrixXd& A) {
  const Eigen::Index n = A.rows();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n * n, n * n);
  // Column-major vec: vec(C)[i + n j] = C(i, j).
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index row = i + n * j;
      for (Eigen::Index k = 0; k < n; ++k) {
        K(row, k + n * j) += A(i, k);  // (A C)(i, j)
        K(row, i + n * k) += A(j, k);  // (C A^T)(i, j)
      }
    }
  }
  return K;
}

}  // namespace

double lyapunov_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C,
                         const Eigen::MatrixXd& F) {
  if (A.rows() != A.cols() || C.rows() != A.rows() || C.cols() != A.cols() ||
      F.rows() != A.rows() || F.cols() != A.cols()) {
    throw DomainError("lyapunov_residual: dimension mismatch");
  }
  return (A * C + C * A.transpose() + F).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& F) {
  if (A.rows() != A.cols() || F.rows() != A.rows() || F.cols() != A.cols()) {
    throw DomainError("solve_lyapunov: dimension mismatch");
  }
  const StabilityReport st = is_stable(A);
  if (!st.stable) {
    std::ostringstream msg;
    msg << "solve_lyapunov: drift matrix is unstable (spectral abscissa " << st.spectral_abscissa
        << ")";
    throw StabilityError(msg.str(), st.spectral_abscissa);
  }

  const Eigen::Index n = A.rows();
  const Eigen::Index n2 = n * n;
  const Eigen::MatrixXd K = kronecker_operator(A);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(K);
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(F.data(), n2);

  Eigen::VectorXd x = lu.solve(rhs);
  const double bound = 1e-10 * F.cwiseAbs().maxCoeff();
  Eigen::MatrixXd C(n, n);
  for (int sweep = 0;; ++sweep) {
    C = Eigen::Map<const Eigen::MatrixXd>(x.data(), n, n);
    C = 0.5 * (C + C.transpose()).eval();
    const double res = lyapunov_residual(A, C, F);
    if (res <= bound) return C;
    if (sweep == 3) {
      std::ostringstream msg;
      msg << "solve_lyapunov: residual " << res << " exceeds bound " << bound
          << " (reciprocal condition estimate " << lu.rcond() << ")";
      throw NumericalError(msg.str());
    }
    const Eigen::VectorXd r = rhs - K * Eigen::Map<const Eigen::VectorXd>(C.data(), n2);
    x = Eigen::Map<const Eigen::VectorXd>(C.data(), n2) + lu.solve(r);
  }
}

CovarianceMatrix solve_lyapunov(const DriftMatrix& A, const DiffusionMatrix& F) {
  return CovarianceMatrix(solve_lyapunov(Eigen::MatrixXd(A.entries), Eigen::MatrixXd(F.entries)),
                          {Mode::c, Mode::m1, Mode::m2, Mode::b});
}

}  // namespace cmm
