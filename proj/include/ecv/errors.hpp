#pragma once

#include <stdexcept>
#include <string>

namespace ecv {

/// Raised when an argument is outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SingularCurveError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The prime divides the discriminant, so the curve has no reduction there.
class BadReductionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The computation is outside what the toolkit implements (additive
/// reduction, uncertified minimality, l above the subgroup cap).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientPrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ecv
