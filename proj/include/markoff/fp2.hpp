#pragma once

// F_p^2 realised as F_p[sqrt(delta)] for a fixed non-residue delta.

#include <ostream>
#include <string>

#include "markoff/fp.hpp"

namespace markoff {

class Fp2Element;

/// The field F_p[sqrt(delta)]. Construction checks that delta is a non-residue.
class QuadraticField {
 public:
  explicit QuadraticField(const FpElement& delta) : delta_(delta) {
    if (legendre(delta) != -1)
      throw PreconditionViolated("delta = " + std::to_string(delta.value()) + " is not a non-residue mod " +
                                 std::to_string(delta.modulus()));
  }

  const FpElement& delta() const { return delta_; }
  u64 modulus() const { return delta_.modulus(); }

  Fp2Element element(u64 a, u64 b) const;
  Fp2Element element(const FpElement& a, const FpElement& b) const;
  Fp2Element one() const;
  /// The adjoined square root, 0 + 1*sqrt(delta).
  Fp2Element root() const;

 private:
  FpElement delta_;
};

/// a + b*sqrt(delta).
class Fp2Element {
 public:
  Fp2Element(const FpElement& a, const FpElement& b, const FpElement& delta) : Fp2Element(a, b, QuadraticField(delta)) {}
  Fp2Element(const FpElement& a, const FpElement& b, const QuadraticField& field) : a_(a), b_(b), delta_(field.delta()) {
    if (a.modulus() != delta_.modulus() || b.modulus() != delta_.modulus())
      throw ModulusMismatch("Fp2Element components over different moduli");
  }

  const FpElement& a() const { return a_; }
  const FpElement& b() const { return b_; }
  const FpElement& delta() const { return delta_; }
  u64 modulus() const { return delta_.modulus(); }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_one() const { return a_.is_one() && b_.is_zero(); }

  Fp2Element operator+(const Fp2Element& o) const {
    check(o);
    return {a_ + o.a_, b_ + o.b_, delta_, Trusted{}};
  }
  Fp2Element operator-(const Fp2Element& o) const {
    check(o);
    return {a_ - o.a_, b_ - o.b_, delta_, Trusted{}};
  }
  Fp2Element operator*(const Fp2Element& o) const {
    check(o);
    return {a_ * o.a_ + b_ * o.b_ * delta_, a_ * o.b_ + o.a_ * b_, delta_, Trusted{}};
  }
  Fp2Element& operator*=(const Fp2Element& o) { return *this = *this * o; }

  Fp2Element conjugate() const { return {a_, -b_, delta_, Trusted{}}; }

  Fp2Element pow(u64 e) const {
    Fp2Element result{a_.lift(1), a_.lift(0), delta_, Trusted{}};
    Fp2Element base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  friend bool operator==(const Fp2Element&, const Fp2Element&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Fp2Element& x) {
    return os << x.a_ << " + " << x.b_ << "*sqrt(" << x.delta_ << ")";
  }

 private:
  friend class QuadraticField;
  struct Trusted {};
  Fp2Element(const FpElement& a, const FpElement& b, const FpElement& delta, Trusted) : a_(a), b_(b), delta_(delta) {}

  void check(const Fp2Element& o) const {
    if (o.delta_ != delta_) throw ModulusMismatch("F_p^2 operands over different moduli or deltas");
  }

  FpElement a_;
  FpElement b_;
  FpElement delta_;
};

inline Fp2Element QuadraticField::element(const FpElement& a, const FpElement& b) const {
  if (a.modulus() != modulus() || b.modulus() != modulus())
    throw ModulusMismatch("Fp2Element components over different moduli");
  return {a, b, delta_, Fp2Element::Trusted{}};
}
inline Fp2Element QuadraticField::element(u64 a, u64 b) const { return {delta_.lift(a), delta_.lift(b), delta_, Fp2Element::Trusted{}}; }
inline Fp2Element QuadraticField::one() const { return element(1, 0); }
inline Fp2Element QuadraticField::root() const { return element(0, 1); }

inline Fp2Element fp2_mul(const Fp2Element& x, const Fp2Element& y) { return x * y; }

/// N(a + b*sqrt(delta)) = a^2 - delta*b^2.
inline FpElement norm(const Fp2Element& x) { return x.a() * x.a() - x.delta() * x.b() * x.b(); }

/// Tr(a + b*sqrt(delta)) = 2a.
inline FpElement trace(const Fp2Element& x) { return x.a() + x.a(); }

}  // namespace markoff
