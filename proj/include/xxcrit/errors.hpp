#pragma once

#include <stdexcept>
#include <string>

namespace xxcrit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs violate a documented precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A size guard was exceeded (Hilbert-space dimension, matrix materialization).
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An eigensolver, quadrature, or consistency check failed to meet tolerance.
class NumericError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace xxcrit
