#pragma once

#include <stdexcept>
#include <string>

namespace mptcf {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A return history with fewer than two periods.
class EmptyHistory : public Error {
public:
  using Error::Error;
};

/// NaN or infinity where a finite value is required.
class NonFiniteInput : public Error {
public:
  using Error::Error;
};

/// Vector/matrix shapes do not agree.
class DimensionMismatch : public Error {
public:
  using Error::Error;
};

/// Input violates a documented invariant (negative weight, bad date range, ...).
class InvalidInput : public Error {
public:
  using Error::Error;
};

/// The QP solver hit its iteration cap without meeting tolerance.
class SolverDivergence : public Error {
public:
  using Error::Error;
};

/// Risk-aversion estimation found no day with a non-empty portfolio.
class NoValidDays : public Error {
public:
  using Error::Error;
};

/// Hybrid cutoff k outside [1, n].
class InvalidCutoff : public Error {
public:
  using Error::Error;
};

/// Price and snapshot universes share no asset.
class UniverseMismatch : public Error {
public:
  using Error::Error;
};

/// Malformed input file; carries the 1-based line number.
class ParseError : public Error {
public:
  ParseError(const std::string& path, long line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
  long line() const { return line_; }

private:
  long line_;
};

}  // namespace mptcf
