#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

/// Error categories surfaced by the library. The CLI maps all of them to exit code 2
/// except EstimationError, which is a computational failure.
enum class ErrorKind {
  InvalidSpec,     // malformed or inconsistent domain / function / space description
  Domain,          // argument outside the mathematical domain of an operation
  Unsupported,     // backend cannot handle the given spec
  Precondition,    // caller violated a documented precondition
  Range,           // grid does not cover the required range
  Data,            // inconsistent numeric data (NaN, zero gaps, ...)
  PoleProximity,   // radius too close to the Green pole
  Estimation,      // Monte Carlo estimation failed
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace hardy
