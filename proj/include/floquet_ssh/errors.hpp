#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fssh {

// Machine-readable failure codes; also written into sweep error rows.
enum class FailureCode {
  InvalidParams,
  DegenerateImpurity,
  NonConvergence,
  Overflow,
  PropagatorCollapse,
  StepNonConvergence,
  DimensionCap,
  NfCapExceeded,
  Aliasing,
};

std::string_view to_string(FailureCode code);

class Error : public std::runtime_error {
 public:
  Error(FailureCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  FailureCode code() const { return code_; }

 private:
  FailureCode code_;
};

// Bad inputs, detected before any computation. CLI exit status 2.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, FailureCode code = FailureCode::InvalidParams)
      : Error(code, what) {}
};

// Numerical failure during a computation. CLI exit status 1.
class SolverError : public Error {
 public:
  SolverError(FailureCode code, const std::string& what) : Error(code, what) {}
};

}  // namespace fssh
