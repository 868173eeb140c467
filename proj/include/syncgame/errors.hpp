#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace syncgame {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed DFA text or board DSL. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A configured computation budget (exact-search bound, monoid cap,
/// state-space cap, configuration cap) was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// An operation was called on an input outside its domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The transition monoid is not in DS.
class NotInDs : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotSynchronizing : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Internal consistency check failed; indicates a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace syncgame
