#pragma once

#include <stdexcept>

namespace rmt {

// Bad user-supplied configuration: unknown distribution spec, invalid
// parameters, missing experiment params.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside an operation's mathematical domain.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure: non-convergence, blow-up, violated invariant.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejection sampling exceeded its attempt budget.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Oracle self-convergence check failed; reference values unusable.
class OracleError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Filesystem or output failure.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rmt
