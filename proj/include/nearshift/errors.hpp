#pragma once

#include <stdexcept>
#include <string>

namespace nearshift {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or non-finite input (bad degree, non-finite coefficient, pole).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Singular or ill-conditioned linear algebra.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// The working truncation cannot represent the requested object to tolerance.
class TruncationInsufficient : public Error {
 public:
  using Error::Error;
};

}  // namespace nearshift
