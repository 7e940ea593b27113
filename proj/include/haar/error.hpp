#pragma once

#include <stdexcept>
#include <string>

namespace haar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An iterative method (eigensolver, integrator, root finder) did not converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace haar
