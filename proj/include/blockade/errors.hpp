#pragma once

#include <stdexcept>
#include <string>

namespace blockade {

/// Input outside the validity domain of a closed-form expression or parameter set.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operand shapes do not match.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The trace-augmented steady-state system could not be solved.
class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(const std::string& what, double conditionEstimate)
      : std::runtime_error(what + " (condition estimate " + std::to_string(conditionEstimate) + ")"),
        condition_(conditionEstimate) {}
  double condition_estimate() const noexcept { return condition_; }

 private:
  double condition_;
};

/// Time integration produced non-finite values.
class StepSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace blockade
