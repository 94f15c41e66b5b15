#pragma once

#include <stdexcept>
#include <string>

namespace cmm {

// Base of every error raised by the library. Callers that only need to
// distinguish "configuration" from "numerics" can catch the two direct
// subclasses below.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string field, int line, const std::string& what)
      : Error(format(field, line, what)), field_(std::move(field)), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& field, int line, const std::string& what) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += "'" + field + "': ";
    return out + what;
  }

  std::string field_;
  int line_ = 0;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StabilityError : public NumericalError {
 public:
  StabilityError(const std::string& what, double spectral_abscissa)
      : NumericalError(what), abscissa_(spectral_abscissa) {}
  double spectral_abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

class SingularConfigurationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class AccuracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace cmm
