#pragma once

#include <stdexcept>
#include <string>

namespace qholo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by the zero polynomial") {}
};

class NotDivisible : public Error {
 public:
  using Error::Error;
};

/// Substitution produced 0/0; `factor()` is the denominator that vanished.
class SpecializationError : public Error {
 public:
  SpecializationError(const std::string& what, std::string factor)
      : Error(what), factor_(std::move(factor)) {}
  const std::string& factor() const noexcept { return factor_; }

 private:
  std::string factor_;
};

class InterpolationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace qholo
