#pragma once

#include <stdexcept>
#include <string>

namespace twofront {

// Thrown by config / input-file readers. Message carries file:line context.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a parameter struct fails its validity checks.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Base for failures of the numerical machinery itself.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what)
      : std::runtime_error(what) {}
};

// Wave-speed search could not bracket a sign change in (0, 2*sqrt(theta*d)).
class NoBracketError : public NumericalError {
 public:
  explicit NoBracketError(const std::string& what) : NumericalError(what) {}
};

// Iteration budget exhausted without meeting the residual tolerance.
class NoConvergenceError : public NumericalError {
 public:
  explicit NoConvergenceError(const std::string& what)
      : NumericalError(what) {}
};

class SingularJacobianError : public NumericalError {
 public:
  explicit SingularJacobianError(const std::string& what)
      : NumericalError(what) {}
};

// Closed-form equilibrium requested outside the coexistence regime.
class NegativeDiscriminantError : public NumericalError {
 public:
  explicit NegativeDiscriminantError(const std::string& what)
      : NumericalError(what) {}
};

// Time step could not be made acceptable by repeated halving.
class StepRejectedError : public NumericalError {
 public:
  explicit StepRejectedError(const std::string& what)
      : NumericalError(what) {}
};

// NaN or infinity appeared in the state vector.
class NonFiniteStateError : public NumericalError {
 public:
  explicit NonFiniteStateError(const std::string& what)
      : NumericalError(what) {}
};

// Bisection endpoints do not straddle the sought transition.
class BadBracketError : public NumericalError {
 public:
  explicit BadBracketError(const std::string& what) : NumericalError(what) {}
};

// Bisection ended with both outcomes still undecided.
class UndecidedError : public NumericalError {
 public:
  explicit UndecidedError(const std::string& what) : NumericalError(what) {}
};

// Too few trajectory samples in the requested fit window.
class InsufficientDataError : public NumericalError {
 public:
  explicit InsufficientDataError(const std::string& what)
      : NumericalError(what) {}
};

}  // namespace twofront
