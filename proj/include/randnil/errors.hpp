#pragma once

#include <stdexcept>
#include <string>

namespace randnil {

/// Malformed input: bad dimension, index out of range, mismatched operands.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical invariant that must hold for every sample was violated.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A computation refused to run because it would exceed a configured budget
/// or ceiling (enumeration size, exact-step depth, ...).
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

}  // namespace randnil
