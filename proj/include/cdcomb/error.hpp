#pragma once

#include <stdexcept>
#include <string>

namespace cdcomb {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid numeric parameter (df <= 0, se <= 0, probability outside (0,1), ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid input (empty list, length mismatch, disjoint supports,
/// partition too small, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Monotonicity / shape violation in user-supplied functions or grids.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure (zero-mass density product, quadrature breakdown, ...).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// CSV / config parsing failure; carries the offending row when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg, long row = -1)
      : Error(row >= 0 ? msg + " (row " + std::to_string(row) + ")" : msg), row_(row) {}
  long row() const { return row_; }

 private:
  long row_;
};

/// Filesystem / stream failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cdcomb
