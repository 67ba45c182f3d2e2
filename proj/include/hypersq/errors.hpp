#pragma once

#include <stdexcept>
#include <string>

namespace hypersq {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation at a point where the quantity is infinite (K(1), a prevertex).
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An iterative solver did not reach its tolerance within the iteration budget.
class IterationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature exhausted its subdivision budget.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hypersq
