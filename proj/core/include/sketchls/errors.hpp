#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sketchls {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Shape or size precondition violated (rows < cols, s > m, length mismatch).
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

/// Malformed or unusable input data (CSV parse failures, missing files,
/// wrong column sets, not enough rows).
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(what) {}
};

/// A least-squares factorization found a diagonal of R too small relative to
/// the largest one; the offending column index and the values are carried so
/// callers can diagnose which direction collapsed.
class DegenerateRankError : public Error {
 public:
  DegenerateRankError(std::size_t column, double r_value, double threshold,
                      const std::string& context = "")
      : Error("rank-deficient matrix: |R[" + std::to_string(column) + "," +
              std::to_string(column) + "]| = " + std::to_string(r_value) +
              " below threshold " + std::to_string(threshold) +
              (context.empty() ? "" : " [" + context + "]")),
        column_(column),
        r_value_(r_value),
        threshold_(threshold) {}

  std::size_t column() const { return column_; }
  double r_value() const { return r_value_; }
  double threshold() const { return threshold_; }

 private:
  std::size_t column_;
  double r_value_;
  double threshold_;
};

}  // namespace sketchls
