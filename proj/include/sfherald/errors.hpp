#pragma once

#include <stdexcept>
#include <string>

namespace sfherald {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Parameters violate a precondition (non-normalizable state, bad range,
/// NaN/Inf input, zero-probability outcome requested, ...).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// Closed-form expression degenerates at this parameter value (a = +-1).
class SingularParameterError : public Error {
 public:
  using Error::Error;
};

/// No experimental setup of the requested kind realizes the target.
class InfeasibleDesignError : public Error {
 public:
  using Error::Error;
};

/// Quadrature or optimizer failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace sfherald
