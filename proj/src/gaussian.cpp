#include "cmm/gaussian.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <string>

#include "cmm/error.hpp"

namespace cmm {

ModeSelection::ModeSelection(std::initializer_list<Mode> modes)
    : ModeSelection(std::vector<Mode>(modes)) {}

ModeSelection::ModeSelection(std::vector<Mode> modes) : modes_(std::move(modes)) {
  if (modes_.empty() || modes_.size() > 3) {
    throw DomainError("mode selection must hold 1 to 3 modes");
  }
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const int idx = static_cast<int>(modes_[i]);
    if (idx < 0 || idx > 3) throw DomainError("mode selection index out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (modes_[j] == modes_[i]) throw DomainError("mode selection has a repeated mode");
    }
  }
}

CovarianceMatrix reduce(const CovarianceMatrix& C, const ModeSelection& sel) {
  const auto labels = C.modes();
  std::vector<int> pos;
  for (Mode m : sel.modes()) {
    const auto it = std::find(labels.begin(), labels.end(), m);
    if (it == labels.end()) {
      throw DomainError("reduce: mode " + std::string(mode_name(m)) + " not present");
    }
    pos.push_back(static_cast<int>(it - labels.begin()));
  }
  const int k = static_cast<int>(pos.size());
  Eigen::MatrixXd out(2 * k, 2 * k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      out.block<2, 2>(2 * a, 2 * b) = C.entries().block<2, 2>(2 * pos[a], 2 * pos[b]);
    }
  }
  return CovarianceMatrix(std::move(out), sel.modes());
}

CovarianceMatrix partial_transpose(const CovarianceMatrix& C, int position) {
  if (position < 0 || position >= C.n_modes()) {
    throw DomainError("partial_transpose: mode position out of range");
  }
  // K C K only flips the sign of the row and column of one momentum.
  Eigen::MatrixXd out = C.entries();
  const int q = 2 * position + 1;
  out.row(q) *= -1.0;
  out.col(q) *= -1.0;
  return CovarianceMatrix(std::move(out), {C.modes().begin(), C.modes().end()});
}

Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

Eigen::MatrixXcd minus_sigma_y_sum(int n_modes) {
  const std::complex<double> i{0.0, 1.0};
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    // -sigma_y = [[0, i], [-i, 0]]
    out(2 * k, 2 * k + 1) = i;
    out(2 * k + 1, 2 * k) = -i;
  }
  return out;
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& C) {
  const Eigen::MatrixXd& M = C.entries();
  const int n = C.n_modes();
  const double scale = M.cwiseAbs().maxCoeff();
  const double tol = 1e-9 * std::max(scale, 1e-300);

  const Eigen::MatrixXcd iomega_c =
      std::complex<double>{0.0, 1.0} * symplectic_form(n).cast<std::complex<double>>() *
      M.cast<std::complex<double>>();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(iomega_c, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw NumericalError("symplectic_eigenvalues: eigen-decomposition failed");
  }

  std::vector<double> re;
  for (const auto& lambda : es.eigenvalues()) {
    if (std::abs(lambda.imag()) > tol) {
      throw NumericalError("symplectic_eigenvalues: complex eigenvalue of i Omega C");
    }
    re.push_back(lambda.real());
  }
  std::sort(re.begin(), re.end());
  std::vector<double> nu(n);
  for (int k = 0; k < n; ++k) {
    const double hi = re[n + k];
    const double lo = re[n - 1 - k];
    if (std::abs(hi + lo) > tol) {
      throw NumericalError("symplectic_eigenvalues: eigenvalues do not pair as +-nu");
    }
    nu[k] = 0.5 * (hi - lo);
  }
  return nu;
}

bool physicality_check(const CovarianceMatrix& C) {
  try {
    const auto nu = symplectic_eigenvalues(C);
    return nu.front() >= 0.5 - 1e-9;
  } catch (const NumericalError&) {
    return false;
  }
}

}  // namespace cmm
