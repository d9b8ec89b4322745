#pragma once

#include <stdexcept>
#include <string>

namespace gff {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A dense factorization did not converge (or was fed non-finite data).
struct FactorizationError : Error {
  FactorizationError(long rows, long cols, const std::string& what)
      : Error("factorization failed on " + std::to_string(rows) + "x" +
              std::to_string(cols) + " matrix: " + what),
        rows(rows),
        cols(cols) {}
  long rows;
  long cols;
};

// Inversion requested on a numerically singular positive operator.
struct SingularityError : Error {
  SingularityError(double min_eig, double max_eig)
      : Error("operator is numerically singular (min eigenvalue " +
              std::to_string(min_eig) + ", max eigenvalue " +
              std::to_string(max_eig) + ")"),
        min_eigenvalue(min_eig),
        max_eigenvalue(max_eig) {}
  double min_eigenvalue;
  double max_eigenvalue;
};

// An invariant of a domain type is violated. member_index is the offending
// member when the violation is member-local, -1 otherwise.
struct ValidationError : Error {
  ValidationError(long member_index, const std::string& what)
      : Error(what), member_index(member_index) {}
  long member_index;
};

// Malformed input document; path points at the offending field.
struct ParseError : Error {
  ParseError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path(std::move(path)) {}
  std::string path;
};

struct ShapeError : Error {
  using Error::Error;
};

struct IndexError : Error {
  using Error::Error;
};

// The family has no positive lower frame bound.
struct NotAFrameError : Error {
  explicit NotAFrameError(double lower)
      : Error("family is not a frame (lower bound " + std::to_string(lower) + ")"),
        lower_bound(lower) {}
  double lower_bound;
};

// Frame operator too ill-conditioned to invert meaningfully.
struct ConditioningError : Error {
  explicit ConditioningError(double condition)
      : Error("frame operator condition number " + std::to_string(condition) +
              " exceeds the inversion guard"),
        condition(condition) {}
  double condition;
};

// ensure_frame could not be satisfied within the retry budget.
struct GenerationError : Error {
  GenerationError(double last_lower, double last_upper)
      : Error("could not generate a frame (last bounds " +
              std::to_string(last_lower) + ", " + std::to_string(last_upper) + ")"),
        last_lower(last_lower),
        last_upper(last_upper) {}
  double last_lower;
  double last_upper;
};

}  // namespace gff
