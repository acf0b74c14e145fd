#pragma once

#include <stdexcept>
#include <string>

namespace markoff {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The operand has no square root modulo p.
class NonResidue : public Error {
 public:
  using Error::Error;
};

/// Operands live over different moduli (or different adjoined roots).
class ModulusMismatch : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

class NotAUnit : public Error {
 public:
  using Error::Error;
};

/// x^(group_order) != 1, so group_order is not a multiple of ord(x).
class OrderMismatch : public Error {
 public:
  using Error::Error;
};

/// A size guard on an exhaustive computation was exceeded.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

class WrongResidueClass : public Error {
 public:
  using Error::Error;
};

class Disconnected : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class NotOnSurface : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

/// A mathematical invariant the library relies on failed at runtime.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace markoff
