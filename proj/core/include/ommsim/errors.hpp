#pragma once

#include <stdexcept>
#include <string>

namespace ommsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The operating point makes a closed-form expression singular.
class DegenerateOperatingPoint : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed (singular system, eigensolver breakdown, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// An iterative routine ran out of budget before meeting its tolerance.
class NonConvergenceError : public NumericalError {
 public:
  NonConvergenceError(const std::string& what, double final_residual)
      : NumericalError(what), final_residual_(final_residual) {}
  double final_residual() const noexcept { return final_residual_; }

 private:
  double final_residual_;
};

/// A caller-side precondition was violated (e.g. solving with an unstable drift).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Configuration could not be parsed or validated.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ommsim
