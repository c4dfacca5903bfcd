#pragma once

#include <stdexcept>
#include <string>

namespace wqcm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed expression text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Arithmetic outside a function's domain: division by zero, sqrt of a non-positive value.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Singular metric or Q, eigen-solver failure, degenerate plane, point outside the chart box.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace wqcm
