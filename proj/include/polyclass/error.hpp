#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polyclass {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed `.pols` input. Line and column are 1-based.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

// Violated precondition on an argument (size mismatch, empty input, ...).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

// An oracle was asked to work outside its exhaustive-search guard.
class GuardExceeded : public Error {
public:
  using Error::Error;
};

// Canonization ran past its deadline.
class DeadlineExceeded : public Error {
public:
  using Error::Error;
};

// Store-level failures: I/O, corrupted objects, index errors.
class StoreError : public Error {
public:
  using Error::Error;
};

class CorruptionError : public StoreError {
public:
  using StoreError::StoreError;
};

}  // namespace polyclass
