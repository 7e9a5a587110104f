#pragma once

#include <stdexcept>
#include <string>

namespace asymq {

// Argument outside the mathematical domain of an operation (t outside [0,1],
// eps outside (0,1), r > n in a log-binomial, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A parameter tuple that is not in the admissible set. `violated()` names
// the inequality that failed, e.g. "m + k - n <= l".
class ConstraintViolation : public std::invalid_argument {
 public:
  ConstraintViolation(std::string violated, const std::string& detail)
      : std::invalid_argument(detail), violated_(std::move(violated)) {}
  const std::string& violated() const noexcept { return violated_; }

 private:
  std::string violated_;
};

// An operation-specific precondition (k == l for the closed form, gamma == 0
// for the refined constants, ...) does not hold.
class PreconditionViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A size cap (dense oracle qubit count, exact-arithmetic n) was exceeded.
class ResourceCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace asymq
