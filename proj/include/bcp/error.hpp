#pragma once

#include <stdexcept>
#include <string>

namespace bcp {

/// Argument outside the domain of a mathematical function or model.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed user data (CSV cells, series lengths, CLI inputs).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure: non-convergence, singular information, overflow in simulation.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bcp
