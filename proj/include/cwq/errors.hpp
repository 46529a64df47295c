#pragma once

#include <stdexcept>
#include <string>

namespace cwq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract user input (unknown vertex, invalid partition, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// A syntax error in the expression DSL. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

// A precondition the algorithm depends on does not hold, or an internal
// invariant check fired.
class ContractError : public Error {
 public:
  using Error::Error;
};

// An exhaustive oracle was asked to run beyond its configured size limit.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace cwq
