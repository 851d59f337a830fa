#pragma once

#include <stdexcept>
#include <string>

namespace cascade {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Model parameters violate their admissible ranges.
class ParameterError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A field does not satisfy the invariants of its view (boundary value, grid layout).
class InconsistentFieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The dissipation cutoff is infinite (nu == 0). Distinct from numeric overflow.
class InfiniteCutoff : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An integral that diverges was requested without a truncation.
class DivergentIntegral : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Least-squares fit refused: empty, degenerate, or nonpositive data.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A time step exceeds the stability bound of the explicit scheme.
class StabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cascade
