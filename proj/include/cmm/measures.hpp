#pragma once

#include <array>

#include "cmm/covariance.hpp"

namespace cmm {

// nu_minus within this many units of max(1, max|C|) of 1/2 is taken as 1/2.
inline constexpr double nu_snap_tolerance = 1e-13;

struct BipartiteResult {
  std::array<Mode, 2> modes{};
  double nu_minus = 0.5;  // min symplectic eigenvalue of the partial transpose
  double E_n = 0.0;       // max(0, -ln(2 nu_minus))
};

/// Logarithmic negativity of a two-mode state. `flip` picks which mode's
/// momentum is reversed (0 = first); the value does not depend on it.
/// Throws DomainError for an unphysical input.
BipartiteResult log_negativity(const CovarianceMatrix& C4, int flip = 0);

/// One-versus-two-mode negativity of a three-mode state, `pivot` being the
/// 0-based position of the single mode.
double one_vs_two_negativity(const CovarianceMatrix& C6, int pivot);

struct ContangleValue {
  double raw = 0.0;    // E^2(a|bc) - E^2(a|b) - E^2(a|c), unclamped
  double value = 0.0;  // raw, with (-1e-9, 0) clamped to 0
  bool monogamy_violation = false;  // raw <= -1e-9
};

inline constexpr double contangle_clamp_window = 1e-9;

ContangleValue residual_contangle(const CovarianceMatrix& C6, int pivot);

struct TripartiteResult {
  std::array<Mode, 3> modes{};
  std::array<ContangleValue, 3> pivots{};  // pivot k = modes[k] | rest
  double R_min = 0.0;

  bool monogamy_violation() const {
    return pivots[0].monogamy_violation || pivots[1].monogamy_violation ||
           pivots[2].monogamy_violation;
  }
};

TripartiteResult min_residual_contangle(const CovarianceMatrix& C6);

/// |a - b| / (a + b), with 0/0 defined as 0. Negative input is a DomainError.
double contrast_ratio(double e_pos, double e_neg);

}  // namespace cmm
