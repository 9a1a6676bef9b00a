#pragma once

#include <stdexcept>
#include <string>

namespace eulertop {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Point or level outside the domain of an operation (x3 = 0, ellipse leaving the disk, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inertia moments that give alpha*beta == 0 (symmetric top about the x3 axis).
class DegenerateTopError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input: bad parameters, unparsable polynomial, wrong spec kind.
class InvalidSpecError : public Error {
 public:
  using Error::Error;
};

/// Field does not have the x3*P(x1,x2,x3^2) shape required by a closed-form path.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Integrator, quadrature or iteration failure.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Polynomial that is identically zero where a nonzero one is required.
class IdenticallyZeroError : public Error {
 public:
  using Error::Error;
};

}  // namespace eulertop
