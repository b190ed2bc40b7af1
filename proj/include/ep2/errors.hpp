#pragma once

#include <stdexcept>
#include <string>

namespace ep2 {

/// Invalid input for an operation: a nonpositive value where 1/u^3 is
/// evaluated, a grid that is too small, a parameter regime the operation
/// does not cover.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A hypothesis required by an existence construction does not hold for the
/// given data. The message names the inequality that failed.
class HypothesisError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace ep2
