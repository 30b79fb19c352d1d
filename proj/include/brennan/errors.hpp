#pragma once

#include <stdexcept>
#include <string>

namespace brennan {

// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative solver (Newton inversion, bisection) failed to converge.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature could not produce a usable estimate (non-finite integrand,
// invalid grading, inconclusive tail).
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A test function does not belong to the Sobolev space it is used in.
class InadmissibleFunction : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace brennan
