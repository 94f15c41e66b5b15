#pragma once

#include <Eigen/Dense>

#include <span>
#include <string_view>
#include <vector>

#include "cmm/error.hpp"

namespace cmm {

enum class Mode : int { c = 0, m1 = 1, m2 = 2, b = 3 };

inline constexpr Mode all_modes[] = {Mode::c, Mode::m1, Mode::m2, Mode::b};

std::string_view mode_name(Mode m);
// Accepts "c", "m1", "m2", "b". Throws ConfigError otherwise.
Mode parse_mode(std::string_view s);

// Symmetric 2n x 2n matrix of symmetrized quadrature second moments, with
// the mode carried by each (x, p) pair. Vacuum is I/2 in this convention.
class CovarianceMatrix {
 public:
  CovarianceMatrix() = default;
  CovarianceMatrix(Eigen::MatrixXd entries, std::vector<Mode> modes);

  // Labels the pairs c, m1, m2, b in order; for states built by hand.
  static CovarianceMatrix unlabeled(Eigen::MatrixXd entries);

  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  std::span<const Mode> modes() const noexcept { return modes_; }
  int n_modes() const noexcept { return static_cast<int>(modes_.size()); }
  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  double operator()(int i, int j) const { return entries_(i, j); }

 private:
  Eigen::MatrixXd entries_;
  std::vector<Mode> modes_;
};

}  // namespace cmm
