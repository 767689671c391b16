#pragma once

#include <stdexcept>
#include <string>

namespace diagonalis {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input (bad JSON, wrong dimensions, mismatched lengths).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A theorem's standing hypothesis does not hold for the given data.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The input is well-formed but outside what the closed-form machinery handles.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// An iterative kernel or a constructor failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace diagonalis
