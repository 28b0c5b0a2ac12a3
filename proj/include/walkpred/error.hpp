#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace walkpred {

// Base for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text; line is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Invalid user configuration (fractions, repetitions, flags).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation (t < 0, edgeless graph).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Eigensolver failure or an invariant broken by round-off beyond tolerance.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition (e.g. candidate pair that is a training edge).
class ContractError : public Error {
 public:
  using Error::Error;
};

}  // namespace walkpred
