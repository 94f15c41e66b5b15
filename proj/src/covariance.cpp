#include "cmm/covariance.hpp"

#include <string>

#include "cmm/error.hpp"

namespace cmm {

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::c: return "c";
    case Mode::m1: return "m1";
    case Mode::m2: return "m2";
    case Mode::b: return "b";
  }
  return "?";
}

Mode parse_mode(std::string_view s) {
  for (Mode m : all_modes) {
    if (mode_name(m) == s) return m;
  }
  throw ConfigError("mode", 0, "unknown mode '" + std::string(s) + "' (expected c, m1, m2 or b)");
}

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd entries, std::vector<Mode> modes)
    : entries_(std::move(entries)), modes_(std::move(modes)) {
  if (entries_.rows() != entries_.cols()) throw DomainError("covariance matrix must be square");
  if (entries_.rows() % 2 != 0) throw DomainError("covariance matrix must have even dimension");
  if (static_cast<std::size_t>(entries_.rows()) != 2 * modes_.size()) {
    throw DomainError("covariance matrix dimension does not match its mode labels");
  }
}

CovarianceMatrix CovarianceMatrix::unlabeled(Eigen::MatrixXd entries) {
  if (entries.rows() % 2 != 0 || entries.rows() > 8) {
    throw DomainError("unlabeled covariance matrix must be 2n x 2n with n <= 4");
  }
  std::vector<Mode> modes;
  for (int k = 0; k < entries.rows() / 2; ++k) modes.push_back(all_modes[k]);
  return CovarianceMatrix(std::move(entries), std::move(modes));
}

}  // namespace cmm
