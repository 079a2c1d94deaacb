#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace feedback {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension mismatches, out-of-range indices and invalid parameters.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// MAP estimate requested where alpha + beta + n + nbar <= 2.
class DegeneratePriorError : public Error {
 public:
  using Error::Error;
};

/// Malformed event-log line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Event log whose timestamps go backwards.
class OrderingError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Log that cannot support the likelihood-ratio test.
class UntestableLogError : public Error {
 public:
  using Error::Error;
};

/// Optimizer could not produce a result (e.g. unbounded or cycling LP).
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace feedback
