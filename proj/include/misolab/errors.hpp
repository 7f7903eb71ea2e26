#pragma once

#include <stdexcept>
#include <string>

namespace misolab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands carry different arithmetic modes (Exact vs Float).
class ModeMismatch : public Error {
 public:
  using Error::Error;
};

/// Shapes do not agree (dimension of matrices or dense vectors).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text (rational literals, operator spec files).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace misolab
