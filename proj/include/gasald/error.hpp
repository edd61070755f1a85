#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gasald {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto exit codes (data errors -> 2, estimation failure -> 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter outside the support of a distribution or function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed or inadequate input data (length, ordering, finiteness).
class InputError : public Error {
 public:
  using Error::Error;
};

// Input that is well formed but carries no information for the requested
// statistic (singular regressors, constant series, ...).
class DegenerateInputError : public InputError {
 public:
  using InputError::InputError;
};

class InsufficientExceedancesError : public InputError {
 public:
  InsufficientExceedancesError(std::size_t found, std::size_t required)
      : InputError("insufficient VaR exceedances: found " + std::to_string(found) +
                   ", need at least " + std::to_string(required)),
        found_(found) {}
  std::size_t found() const noexcept { return found_; }

 private:
  std::size_t found_;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Score recursion left the admissible region of link space.
class DivergenceError : public Error {
 public:
  explicit DivergenceError(std::size_t time_index)
      : Error("filter diverged at time index " + std::to_string(time_index)),
        time_index_(time_index) {}
  std::size_t time_index() const noexcept { return time_index_; }

 private:
  std::size_t time_index_;
};

// Stationary initialization (I - B)^{-1} kappa does not exist.
class NonstationaryError : public Error {
 public:
  using Error::Error;
};

class EstimationError : public Error {
 public:
  using Error::Error;
};

// Operation invoked on an object in the wrong state (e.g. SEs of an
// unconverged fit).
class StateError : public Error {
 public:
  using Error::Error;
};

}  // namespace gasald
