#pragma once

#include <stdexcept>
#include <string>

namespace gchan {

/// Shape mismatch: odd dimension, non-square input, wrong mode count.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter outside its mathematical domain (negative photon number,
/// transmittivity outside [0,1], p below 1, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix failed a structural predicate. `value` carries the offending
/// quantity: the residual, or the most negative eigenvalue.
class PredicateError : public std::invalid_argument {
 public:
  PredicateError(const std::string& what, double value)
      : std::invalid_argument(what), value_(value) {}
  double value() const { return value_; }

 private:
  double value_;
};

/// A decomposition was constructed but failed its own post-condition.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// A closed-form figure of merit was requested for a channel kind it does
/// not cover.
class UnsupportedKindError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace gchan
