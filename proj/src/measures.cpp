#include "cmm/measures.hpp"

#include <algorithm>
#include <cmath>

#include "cmm/error.hpp"
#include "cmm/gaussian.hpp"

namespace cmm {

namespace {

double negativity_from_nu(double nu) { return std::max(0.0, -std::log(2.0 * nu)); }

// Smallest symplectic eigenvalue of the partial transpose, with eigen-solver
// round-off around the separability boundary 1/2 removed so that product
// states report exactly zero.
double nu_minus(const CovarianceMatrix& C, int flip) {
  const double nu = symplectic_eigenvalues(partial_transpose(C, flip)).front();
  const double tol = nu_snap_tolerance * std::max(1.0, C.entries().cwiseAbs().maxCoeff());
  return std::abs(nu - 0.5) <= tol ? 0.5 : nu;
}

void require_physical(const CovarianceMatrix& C, const char* who) {
  if (!physicality_check(C)) throw DomainError(std::string(who) + ": unphysical covariance matrix");
}

}  // namespace

BipartiteResult log_negativity(const CovarianceMatrix& C4, int flip) {
  if (C4.n_modes() != 2) throw DomainError("log_negativity: expects a two-mode covariance matrix");
  require_physical(C4, "log_negativity");
  BipartiteResult r;
  r.modes = {C4.modes()[0], C4.modes()[1]};
  r.nu_minus = nu_minus(C4, flip);
  r.E_n = negativity_from_nu(r.nu_minus);
  return r;
}

double one_vs_two_negativity(const CovarianceMatrix& C6, int pivot) {
  if (C6.n_modes() != 3) {
    throw DomainError("one_vs_two_negativity: expects a three-mode covariance matrix");
  }
  require_physical(C6, "one_vs_two_negativity");
  return negativity_from_nu(nu_minus(C6, pivot));
}

ContangleValue residual_contangle(const CovarianceMatrix& C6, int pivot) {
  const double e_split = one_vs_two_negativity(C6, pivot);
  const Mode alpha = C6.modes()[pivot];
  double pairs = 0.0;
  for (int k = 0; k < 3; ++k) {
    if (k == pivot) continue;
    const double e = log_negativity(reduce(C6, {alpha, C6.modes()[k]})).E_n;
    pairs += e * e;
  }
  ContangleValue out;
  out.raw = e_split * e_split - pairs;
  out.value = out.raw;
  if (out.raw < 0.0) {
    if (out.raw > -contangle_clamp_window) {
      out.value = 0.0;
    } else {
      out.monogamy_violation = true;
    }
  }
  return out;
}

TripartiteResult min_residual_contangle(const CovarianceMatrix& C6) {
  TripartiteResult r;
  r.modes = {C6.modes()[0], C6.modes()[1], C6.modes()[2]};
  for (int k = 0; k < 3; ++k) r.pivots[k] = residual_contangle(C6, k);
  r.R_min = std::min({r.pivots[0].value, r.pivots[1].value, r.pivots[2].value});
  return r;
}

double contrast_ratio(double e_pos, double e_neg) {
  if (!(e_pos >= 0.0) || !(e_neg >= 0.0)) {
    throw DomainError("contrast_ratio: inputs must be >= 0");
  }
  const double sum = e_pos + e_neg;
  if (sum == 0.0) return 0.0;
  return std::abs(e_pos - e_neg) / sum;
}

}  // namespace cmm
