#pragma once

#include <stdexcept>
#include <string>

namespace holo_interp {

/// Argument outside the domain of an operation (point outside the ball, ρ ≤ 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation is not defined on the given model space (e.g. density on flat space).
class UnsupportedSpaceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A brute-force size guard tripped.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Numerical guard: ill-conditioned Gram matrix, diverging sum or quadrature.
class NumericalGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConditioningError : public NumericalGuardError {
 public:
  ConditioningError(const std::string& what, double eig_min)
      : NumericalGuardError(what), eig_min_(eig_min) {}
  double eig_min() const noexcept { return eig_min_; }

 private:
  double eig_min_;
};

class QuadratureError : public NumericalGuardError {
 public:
  QuadratureError(const std::string& what, std::size_t node)
      : NumericalGuardError(what), node_(node) {}
  /// Index of the node whose annulus produced a non-finite value.
  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

/// Malformed configuration or input file.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace holo_interp
