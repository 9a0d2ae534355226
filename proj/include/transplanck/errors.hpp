#pragma once

#include <stdexcept>
#include <string>

namespace transplanck {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs outside the mathematical domain of an operation (k > k_p for a
/// cutoff law, a root that does not exist, invalid parameters, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// F²(k) < 0 where a real frequency was requested.
class NegativeSquareError : public DomainError {
 public:
  NegativeSquareError(double k, double omega_squared)
      : DomainError("omega^2 = " + std::to_string(omega_squared) +
                    " < 0 at k = " + std::to_string(k)),
        k_(k),
        omega_squared_(omega_squared) {}

  double k() const noexcept { return k_; }
  double omega_squared() const noexcept { return omega_squared_; }

 private:
  double k_;
  double omega_squared_;
};

class NoRootError : public DomainError {
 public:
  using DomainError::DomainError;
};

class NoInteriorMaximumError : public DomainError {
 public:
  using DomainError::DomainError;
};

class DegenerateDenominatorError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A numerical procedure did not deliver what it promised.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NonConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class FitMismatchError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BlowUpError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Malformed or schema-violating run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace transplanck
