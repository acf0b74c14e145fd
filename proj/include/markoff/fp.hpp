#pragma once

// Prime field F_p with p an odd prime below 2^63.

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "markoff/arith.hpp"
#include "markoff/errors.hpp"

namespace markoff {

/// An odd prime p < 2^63, validated once at construction.
class Modulus {
 public:
  explicit Modulus(u64 p) : p_(p) {
    if (p < 3 || p >= (u64{1} << 63) || !is_prime(p))
      throw InvalidArgument("modulus must be an odd prime below 2^63, got " + std::to_string(p));
  }

  u64 value() const { return p_; }
  operator u64() const { return p_; }

  friend bool operator==(Modulus, Modulus) = default;

 private:
  friend class FpElement;
  struct Trusted {};
  Modulus(Trusted, u64 p) : p_(p) {}

  u64 p_;
};

class FpElement {
 public:
  FpElement(u64 value, Modulus p) : value_(value % p.value()), p_(p.value()) {}

  /// Reduces a signed integer into [0, p).
  static FpElement from_signed(std::int64_t v, Modulus p) {
    const u64 m = p.value();
    if (v >= 0) return FpElement(static_cast<u64>(v) % m, p);
    const u64 r = static_cast<u64>(-(v + 1)) % m;  // avoids negating INT64_MIN
    return FpElement(m - 1 - r, p);
  }

  u64 value() const { return value_; }
  u64 modulus() const { return p_; }
  Modulus field() const { return Modulus(Modulus::Trusted{}, p_); }

  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }

  FpElement operator+(const FpElement& o) const { return make(add_mod(value_, check(o), p_)); }
  FpElement operator-(const FpElement& o) const { return make(sub_mod(value_, check(o), p_)); }
  FpElement operator*(const FpElement& o) const { return make(mul_mod(value_, check(o), p_)); }
  FpElement operator-() const { return make(value_ == 0 ? 0 : p_ - value_); }
  FpElement& operator+=(const FpElement& o) { return *this = *this + o; }
  FpElement& operator-=(const FpElement& o) { return *this = *this - o; }
  FpElement& operator*=(const FpElement& o) { return *this = *this * o; }

  FpElement pow(u64 e) const { return make(pow_mod(value_, e, p_)); }

  /// Multiplicative inverse by Fermat; throws NotAUnit on zero.
  FpElement inverse() const {
    if (value_ == 0) throw NotAUnit("inverse of zero in F_" + std::to_string(p_));
    return pow(p_ - 2);
  }

  FpElement operator/(const FpElement& o) const { return *this * o.inverse(); }

  /// Same residue class, scalar constant in the same field.
  FpElement lift(u64 v) const { return make(v % p_); }

  friend bool operator==(const FpElement&, const FpElement&) = default;

  friend std::ostream& operator<<(std::ostream& os, const FpElement& x) { return os << x.value_; }

 private:
  struct Unchecked {};
  FpElement(Unchecked, u64 v, u64 p) : value_(v), p_(p) {}
  FpElement make(u64 v) const { return FpElement(Unchecked{}, v, p_); }

  u64 check(const FpElement& o) const {
    if (o.p_ != p_) throw ModulusMismatch("F_p operands over different moduli");
    return o.value_;
  }

  u64 value_;
  u64 p_;
};

/// Legendre symbol by Euler's criterion: a^((p-1)/2).
inline int legendre(const FpElement& a) {
  if (a.is_zero()) return 0;
  return a.pow((a.modulus() - 1) / 2).is_one() ? 1 : -1;
}

/// Both square roots of a, smaller representative first (Tonelli-Shanks).
inline std::pair<FpElement, FpElement> sqrt_mod(const FpElement& a) {
  const u64 p = a.modulus();
  const int chi = legendre(a);
  if (chi == 0) return {a, a};
  if (chi < 0) throw NonResidue(std::to_string(a.value()) + " is not a square mod " + std::to_string(p));

  u64 root;
  if (p % 4 == 3) {
    root = pow_mod(a.value(), (p + 1) / 4, p);
  } else {
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    u64 z = 2;
    while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;

    int m = s;
    u64 c = pow_mod(z, q, p);
    u64 t = pow_mod(a.value(), q, p);
    root = pow_mod(a.value(), (q + 1) / 2, p);
    while (t != 1) {
      int i = 0;
      u64 t2 = t;
      while (t2 != 1) {
        t2 = mul_mod(t2, t2, p);
        ++i;
      }
      u64 b = c;
      for (int k = 0; k < m - i - 1; ++k) b = mul_mod(b, b, p);
      m = i;
      c = mul_mod(b, b, p);
      t = mul_mod(t, c, p);
      root = mul_mod(root, b, p);
    }
  }
  const u64 other = p - root;
  const u64 lo = std::min(root, other), hi = std::max(root, other);
  return {a.lift(lo), a.lift(hi)};
}

}  // namespace markoff
