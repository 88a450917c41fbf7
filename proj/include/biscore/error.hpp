#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace biscore {

// Root of everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data or a violated precondition on caller-supplied values.
class DataError : public Error {
 public:
  using Error::Error;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// The computation is well-posed in exact arithmetic but numerically degenerate
// (zero matrix, non-positive leading singular vector, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A (K, L) request the algorithm cannot serve, e.g. min(K, L) < 2.
class UnsupportedConfiguration : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace biscore
