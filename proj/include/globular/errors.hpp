#ifndef GLOBULAR_ERRORS_HPP
#define GLOBULAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace globular {

/// Base of the domain errors. Precondition violations use std::invalid_argument.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two arrows D_i -> T that disagree on their source or target boundary.
class NotParallel : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A parallel pair outside the admissible family of the category flavor.
class NotAdmissible : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A model whose two boundary operations disagree on some arguments.
class CoherenceFailure : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A lifting provider that cannot answer a pair.
class ProviderFailure : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An enumeration that would exceed its resource budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace globular

#endif
