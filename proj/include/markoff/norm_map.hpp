#pragma once

// Square root of the rotation eigenvalue inside F_p[sqrt(Delta_x)].
//
// For x with Delta = 9x^2 - 4 a non-residue and 3x + 2 a non-residue, put
// a = 3x/2. Then (a + 1)/(2 Delta) is a nonzero square, and with
//   beta  = sqrt((a + 1)/(2 Delta)),   alpha = 1/(4 beta)
// the element eta = alpha + beta*sqrt(Delta) satisfies
//   eta^2 = a + (1/2)sqrt(Delta) = epsilon,   N(eta) = -1.

#include <string>

#include "markoff/fp2.hpp"

namespace markoff {

inline FpElement discriminant(const FpElement& x) { return x * x * x.lift(9) - x.lift(4); }

/// epsilon = (3x + sqrt(Delta))/2 for elliptic x, as an element of F_p[sqrt(Delta)].
inline Fp2Element elliptic_eigenvalue(const FpElement& x) {
  QuadraticField field(discriminant(x));
  const FpElement half = x.lift(2).inverse();
  return field.element(x * x.lift(3) * half, half);
}

inline Fp2Element construct_eta(const FpElement& x) {
  const u64 p = x.modulus();
  if (p <= 5) throw PreconditionViolated("construct_eta requires p > 5");
  const FpElement delta = discriminant(x);
  if (legendre(delta) != -1)
    throw PreconditionViolated("x = " + std::to_string(x.value()) + " is not elliptic mod " + std::to_string(p));
  const FpElement shifted = x * x.lift(3) + x.lift(2);
  if (legendre(shifted) != -1)
    throw PreconditionViolated("3x + 2 is not a non-residue mod " + std::to_string(p));

  QuadraticField field(delta);
  const FpElement half = x.lift(2).inverse();
  const FpElement a = x * x.lift(3) * half;
  const FpElement a_plus_one = a + a.lift(1);
  if (a_plus_one.is_zero()) throw DegenerateDenominator("a + 1 = 0 (3x = -2)");

  const FpElement ratio = a_plus_one / (delta + delta);
  const FpElement beta = sqrt_mod(ratio).first;
  const FpElement alpha = (beta * beta.lift(4)).inverse();
  return field.element(alpha, beta);
}

}  // namespace markoff
