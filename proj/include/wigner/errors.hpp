#pragma once

#include <stdexcept>
#include <string>

namespace wigner {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on different grids or have incompatible orders.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An index, contraction depth or split is outside its admissible range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// The result would exceed the configured dense entry cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition (symmetry, unit norm, Hurst range, ...) fails.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace wigner
