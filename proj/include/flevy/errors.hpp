#pragma once

#include <stdexcept>
#include <string>

namespace flevy {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Hurst parameter outside the regime for which a formula or rate is asserted.
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Coarse resolution does not divide the fine one.
class DivisibilityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InsufficientSamplesError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Circulant embedding (or its Cholesky fallback) is not positive semidefinite.
class EmbeddingError : public std::runtime_error {
 public:
  EmbeddingError(const std::string& what, double min_eigenvalue)
      : std::runtime_error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
/// Carries the best estimate and its error bound.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}
  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

}  // namespace flevy
