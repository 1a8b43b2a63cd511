#pragma once

#include <stdexcept>
#include <string>

namespace covkit {

/// Base class for all covkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid argument, malformed configuration, or out-of-domain value.
struct InvalidInput : Error {
  using Error::Error;
};

/// A numeric routine failed to converge or produced an unusable result.
/// `residual` carries the achieved residual when one is known.
struct NumericFailure : Error {
  explicit NumericFailure(const std::string& what, double residual = 0.0)
      : Error(what), residual(residual) {}
  double residual;
};

/// Cholesky factorization hit a nonpositive pivot. `pivot` is the
/// zero-based index of the failing diagonal entry.
struct NotPositiveDefinite : Error {
  NotPositiveDefinite(const std::string& what, int pivot)
      : Error(what), pivot(pivot) {}
  int pivot;
};

/// Malformed text input. `line` is the one-based line number.
struct ParseError : Error {
  ParseError(const std::string& what, long line) : Error(what), line(line) {}
  long line;
};

}  // namespace covkit
