#pragma once

// Covariance-matrix algebra for Gaussian states: mode reduction, partial
// transposition and symplectic spectra.

#include <Eigen/Dense>

#include <initializer_list>
#include <vector>

#include "cmm/covariance.hpp"

namespace cmm {

// 1 to 3 distinct modes, in the order they should appear after reduction.
class ModeSelection {
 public:
  ModeSelection(std::initializer_list<Mode> modes);
  explicit ModeSelection(std::vector<Mode> modes);

  const std::vector<Mode>& modes() const noexcept { return modes_; }
  std::size_t size() const noexcept { return modes_.size(); }

 private:
  std::vector<Mode> modes_;
};

/// Principal submatrix for the selected modes, (x, p) pairs kept together.
CovarianceMatrix reduce(const CovarianceMatrix& C, const ModeSelection& sel);

/// K C K with K = diag(1, ..., -1 at the momentum of mode `position`, ..., 1).
/// `position` is 0-based within C; position 0 of a two-mode C gives the
/// diag(1, -1, 1, 1) convention.
CovarianceMatrix partial_transpose(const CovarianceMatrix& C, int position);

/// Omega = (+) [[0, 1], [-1, 0]] over n modes.
Eigen::MatrixXd symplectic_form(int n_modes);
/// (+) (-sigma_y) over n modes; equal to i * Omega.
Eigen::MatrixXcd minus_sigma_y_sum(int n_modes);

/// The n symplectic eigenvalues of C (moduli of the +-nu eigenvalue pairs of
/// i Omega C), ascending. Throws NumericalError if the spectrum does not
/// come in real +- pairs within 1e-9 * max|C|.
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& C);

/// min nu >= 1/2 - 1e-9. Never throws; an unpairable spectrum is unphysical.
bool physicality_check(const CovarianceMatrix& C);

}  // namespace cmm
