#pragma once

#include <stdexcept>
#include <string>

namespace treecount {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters violate a documented precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An exact result would exceed the digit cap of exact mode.
class ResultTooLarge : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// The spectrum has more than one zero eigenvalue, so the graph is disconnected.
class DisconnectedGraph : public Error {
 public:
  using Error::Error;
};

/// Certified rounding failed even at the maximum working precision.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// Quadrature or series evaluation could not reach the requested tolerance.
class QuadratureBudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace treecount
