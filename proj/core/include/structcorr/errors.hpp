#pragma once

#include <stdexcept>
#include <string>

namespace structcorr {

// Error hierarchy. The three bases map onto process exit codes in the CLI:
//   ConfigError -> 1 (usage / configuration)
//   DataError   -> 2 (malformed or inconsistent input data)
//   NumericalError -> 3 (rank/conditioning/construction failures)
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

class DataError : public Error {
public:
  using Error::Error;
};

class NumericalError : public Error {
public:
  using Error::Error;
};

// A column of the input matrix is constant (norm of the centered column
// below 1e-12), so it cannot be scaled to unit norm. `column` is 0-based.
class ConstantColumn : public DataError {
public:
  explicit ConstantColumn(int column)
      : DataError("constant column at index " + std::to_string(column) +
                  ": centered norm below 1e-12"),
        column(column) {}
  int column;
};

// Cell could not be parsed as a floating-point number. 1-based coordinates
// of the offending data cell.
class ParseError : public DataError {
public:
  ParseError(long row, long col)
      : DataError("cannot parse numeric value at row " + std::to_string(row) +
                  ", column " + std::to_string(col)),
        row(row), col(col) {}
  long row;
  long col;
};

class RaggedRows : public DataError {
public:
  RaggedRows(long row, long expected, long got)
      : DataError("row " + std::to_string(row) + " has " + std::to_string(got) +
                  " fields, expected " + std::to_string(expected)),
        row(row) {}
  long row;
};

// Parsed fine but is NaN or infinite.
class NonFinite : public DataError {
public:
  NonFinite(long row, long col)
      : DataError("non-finite value at row " + std::to_string(row) +
                  ", column " + std::to_string(col)),
        row(row), col(col) {}
  long row;
  long col;
};

class DimensionMismatch : public DataError {
public:
  using DataError::DataError;
};

// The regression design is numerically rank-deficient: the ratio of the
// smallest to largest singular value fell below the condition tolerance.
class NotIdentifiable : public NumericalError {
public:
  explicit NotIdentifiable(double condition_ratio)
      : NumericalError("design not identifiable: condition ratio " +
                       std::to_string(condition_ratio) +
                       " below tolerance"),
        condition_ratio(condition_ratio) {}
  double condition_ratio;
};

// Requested number of components exceeds the rank of the decomposed matrix.
class KTooLarge : public ConfigError {
public:
  KTooLarge(int k, int rank)
      : ConfigError("k = " + std::to_string(k) +
                    " exceeds the rank of the decomposed matrix (" +
                    std::to_string(rank) + ")"),
        k(k), rank(rank) {}
  int k;
  int rank;
};

// The test denominator D collapsed (target column numerically inside the
// span of the retained components).
class DegenerateD : public NumericalError {
public:
  explicit DegenerateD(double d)
      : NumericalError("degenerate test denominator D = " + std::to_string(d)),
        d(d) {}
  double d;
};

class InvalidLevel : public ConfigError {
public:
  explicit InvalidLevel(double level)
      : ConfigError("significance level must lie strictly in (0, 1), got " +
                    std::to_string(level)),
        level(level) {}
  double level;
};

class InsufficientDof : public ConfigError {
public:
  InsufficientDof(long n, int k)
      : ConfigError("cannot estimate noise scale: n - k - 1 = " +
                    std::to_string(n - k - 1) + " < 1") {}
};

class RankDeficient : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class NumericalFailure : public NumericalError {
public:
  using NumericalError::NumericalError;
};

// The structured-scenario generator could not meet its alignment
// postcondition; callers retry with a smaller tau.
class StructuredConstructionFailed : public NumericalError {
public:
  using NumericalError::NumericalError;
};

}  // namespace structcorr
