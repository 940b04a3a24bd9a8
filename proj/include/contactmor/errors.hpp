#pragma once

#include <stdexcept>
#include <string>

namespace contactmor {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPositiveDefinite : Error {
  using Error::Error;
};

struct DegenerateElement : Error {
  using Error::Error;
};

struct InvalidTear : Error {
  using Error::Error;
};

struct EmptyDirichlet : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct ZeroSeed : Error {
  using Error::Error;
};

struct SingularSlaveBlock : Error {
  using Error::Error;
};

struct EigensolverFailure : Error {
  using Error::Error;
};

struct SingularMatrix : Error {
  using Error::Error;
};

/// Scenario file / CLI configuration problems. CLI maps this to exit code 2.
struct ConfigError : Error {
  using Error::Error;
};

/// Unrecoverable failure inside a solver loop (LCP breakdown after retry,
/// eigensolver stagnation, ...). CLI maps this to exit code 3.
struct SolverError : Error {
  using Error::Error;
};

}  // namespace contactmor
