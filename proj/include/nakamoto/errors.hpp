#pragma once

#include <stdexcept>
#include <string>

namespace nakamoto {

// Invalid argument for a model quantity (negative power, alpha outside [0,1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NoEquilibrium : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Optimal attack power is indeterminate (linear costs).
class NotUnique : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoRoot : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SimulationBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw DomainError(message);
}

}  // namespace nakamoto
