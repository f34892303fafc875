#pragma once

#include <stdexcept>
#include <string>

namespace gptlab {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad experiment configuration: unknown task, malformed space string, ...
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Mismatched spaces or coordinate vectors of the wrong length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Operation needs the self-dualizing inner product machinery and the
// space does not provide it (the square-cross-section model).
class PostulateError : public Error {
 public:
  PostulateError() : Error("postulates not satisfied") {}
  using Error::Error;
};

// Input outside the mathematical domain of the operation: non-normalized
// state where a normalized one is required, function undefined at an
// eigenvalue, weights that are not a distribution, NaN coordinates.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A structural guarantee failed at runtime (a computed measurement does
// not sum to the unit effect, a second-law margin is negative, ...).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace gptlab
