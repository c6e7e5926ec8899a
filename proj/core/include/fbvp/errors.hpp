#pragma once

#include <stdexcept>
#include <string>

namespace fbvp {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A series or iteration exhausted its budget before meeting its criterion.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  enum class Kind { kBudgetExceeded, kNonFiniteSample };

  QuadratureError(Kind kind, const std::string& what, double partial_value = 0.0,
                  double partial_error = 0.0)
      : Error(what), kind_(kind), partial_value_(partial_value), partial_error_(partial_error) {}

  Kind kind() const noexcept { return kind_; }
  double partial_value() const noexcept { return partial_value_; }
  double partial_error() const noexcept { return partial_error_; }

 private:
  Kind kind_;
  double partial_value_;
  double partial_error_;
};

}  // namespace fbvp
