#pragma once

#include <stdexcept>
#include <string>

namespace imd {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A log-space result does not fit in a double after exponentiation.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Quadrature could not bound the integration domain or converge.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

// An integrand family violates a numerically checked hypothesis of the
// Laplace method (boundary maximizer, non-negative curvature).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

}  // namespace imd
