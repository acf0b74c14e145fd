#pragma once

// Points of the Markoff surface x1^2 + x2^2 + x3^2 = 3 x1 x2 x3 over F_p.

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "markoff/fp.hpp"

namespace markoff {

/// True iff the triple lies on the surface and is not (0,0,0).
inline bool is_markoff(const FpElement& x1, const FpElement& x2, const FpElement& x3) {
  if (x1.modulus() != x2.modulus() || x1.modulus() != x3.modulus())
    throw ModulusMismatch("is_markoff: coordinates over different moduli");
  if (x1.is_zero() && x2.is_zero() && x3.is_zero()) return false;
  return x1 * x1 + x2 * x2 + x3 * x3 == x1 * x2 * x3 * x1.lift(3);
}

/// A vertex of the Markoff mod-p graph, an ordered triple in X*(p).
class MarkoffPoint {
 public:
  MarkoffPoint(u64 x1, u64 x2, u64 x3, Modulus p) : MarkoffPoint(FpElement(x1, p), FpElement(x2, p), FpElement(x3, p)) {}

  MarkoffPoint(const FpElement& x1, const FpElement& x2, const FpElement& x3)
      : p_(x1.modulus()), x_{x1.value(), x2.value(), x3.value()} {
    if (!is_markoff(x1, x2, x3))
      throw NotOnSurface("(" + std::to_string(x1.value()) + "," + std::to_string(x2.value()) + "," +
                         std::to_string(x3.value()) + ") is not in X*(" + std::to_string(p_) + ")");
  }

  static MarkoffPoint origin(Modulus p) { return MarkoffPoint(1, 1, 1, p); }

  u64 modulus() const { return p_; }
  Modulus field() const { return coord(1).field(); }

  /// Coordinate by 1-based index.
  FpElement coord(int i) const {
    check_index(i);
    return FpElement(x_[i - 1], Modulus(p_));
  }
  u64 value(int i) const {
    check_index(i);
    return x_[i - 1];
  }
  const std::array<u64, 3>& values() const { return x_; }

  /// Flat key p^2 x1 + p x2 + x3; orders points lexicographically.
  u64 key() const { return (x_[0] * p_ + x_[1]) * p_ + x_[2]; }

  static void check_index(int i) {
    if (i < 1 || i > 3) throw InvalidArgument("coordinate index must be 1, 2 or 3");
  }

  friend bool operator==(const MarkoffPoint&, const MarkoffPoint&) = default;
  friend auto operator<=>(const MarkoffPoint& a, const MarkoffPoint& b) { return a.x_ <=> b.x_; }

  friend std::ostream& operator<<(std::ostream& os, const MarkoffPoint& t) {
    return os << "(" << t.x_[0] << "," << t.x_[1] << "," << t.x_[2] << ")";
  }

 private:
  struct Trusted {};
  MarkoffPoint(Trusted, u64 p, std::array<u64, 3> x) : p_(p), x_(x) {}
  friend MarkoffPoint detail_make_point(u64 p, std::array<u64, 3> x);

  u64 p_;
  std::array<u64, 3> x_;
};

// Only for callers that have established the surface equation themselves.
inline MarkoffPoint detail_make_point(u64 p, std::array<u64, 3> x) { return MarkoffPoint(MarkoffPoint::Trusted{}, p, x); }

namespace detail {

// Positions moved by rot_i, in increasing index order.
inline constexpr std::array<std::array<int, 2>, 3> kMoving{{{1, 2}, {0, 2}, {0, 1}}};

struct Mat2 {
  u64 m00, m01, m10, m11;
};

inline Mat2 mat_mul(const Mat2& a, const Mat2& b, u64 p) {
  return {add_mod(mul_mod(a.m00, b.m00, p), mul_mod(a.m01, b.m10, p), p),
          add_mod(mul_mod(a.m00, b.m01, p), mul_mod(a.m01, b.m11, p), p),
          add_mod(mul_mod(a.m10, b.m00, p), mul_mod(a.m11, b.m10, p), p),
          add_mod(mul_mod(a.m10, b.m01, p), mul_mod(a.m11, b.m11, p), p)};
}

inline Mat2 mat_pow(Mat2 base, u64 e, u64 p) {
  Mat2 r{1, 0, 0, 1};
  while (e > 0) {
    if (e & 1) r = mat_mul(r, base, p);
    base = mat_mul(base, base, p);
    e >>= 1;
  }
  return r;
}

/// A_x = [[0, 1], [-1, 3x]].
inline Mat2 rotation_matrix(u64 x, u64 p) { return {0, 1, p - 1, mul_mod(3 % p, x, p)}; }

/// A_x^{-1} = [[3x, -1], [1, 0]].
inline Mat2 inverse_rotation_matrix(u64 x, u64 p) { return {mul_mod(3 % p, x, p), p - 1, 1, 0}; }

}  // namespace detail

/// rot_i applied e times; negative e applies the inverse map. Coordinate i is fixed
/// and the other two, read in index order, are multiplied by A_{x_i}^e.
inline MarkoffPoint rotate(const MarkoffPoint& t, int i, long long e) {
  MarkoffPoint::check_index(i);
  const u64 p = t.modulus();
  const u64 x = t.value(i);
  const u64 steps = e >= 0 ? static_cast<u64>(e) : static_cast<u64>(-(e + 1)) + 1;
  const detail::Mat2 base = e >= 0 ? detail::rotation_matrix(x, p) : detail::inverse_rotation_matrix(x, p);
  const detail::Mat2 m = detail::mat_pow(base, steps, p);
  auto [j, k] = detail::kMoving[i - 1];
  std::array<u64, 3> out = t.values();
  const u64 u = out[j], v = out[k];
  out[j] = add_mod(mul_mod(m.m00, u, p), mul_mod(m.m01, v, p), p);
  out[k] = add_mod(mul_mod(m.m10, u, p), mul_mod(m.m11, v, p), p);
  return detail_make_point(p, out);
}

/// Vieta involution R_i: x_i -> 3 x_j x_k - x_i.
inline MarkoffPoint vieta(const MarkoffPoint& t, int i) {
  MarkoffPoint::check_index(i);
  const u64 p = t.modulus();
  auto [j, k] = detail::kMoving[i - 1];
  std::array<u64, 3> out = t.values();
  out[i - 1] = sub_mod(mul_mod(3 % p, mul_mod(out[j], out[k], p), p), out[i - 1], p);
  return detail_make_point(p, out);
}

/// Coordinate transposition sigma_ij.
inline MarkoffPoint transpose(const MarkoffPoint& t, int i, int j) {
  MarkoffPoint::check_index(i);
  MarkoffPoint::check_index(j);
  std::array<u64, 3> out = t.values();
  std::swap(out[i - 1], out[j - 1]);
  return detail_make_point(t.modulus(), out);
}

/// Visits X*(p) in lexicographic order by solving for x3 with the quadratic
/// formula: x3 = (3 x1 x2 +- sqrt(D))/2, D = 9 x1^2 x2^2 - 4(x1^2 + x2^2).
/// Uses an O(p) square-root table, so p must be small enough to tabulate.
template <class Visitor>
void for_each_point(Modulus modulus, Visitor&& visit) {
  const u64 p = modulus.value();
  constexpr u64 kNoRoot = ~u64{0};
  std::vector<u64> root(p, kNoRoot);
  for (u64 r = p; r-- > 0;) root[mul_mod(r, r, p)] = r;  // descending, so the smaller root wins
  const u64 half = (p + 1) / 2;
  for (u64 x1 = 0; x1 < p; ++x1) {
    const u64 x1sq = mul_mod(x1, x1, p);
    for (u64 x2 = 0; x2 < p; ++x2) {
      const u64 x2sq = mul_mod(x2, x2, p);
      const u64 b = mul_mod(3 % p, mul_mod(x1, x2, p), p);
      const u64 d = sub_mod(mul_mod(b, b, p), mul_mod(4 % p, add_mod(x1sq, x2sq, p), p), p);
      const u64 r = root[d];
      if (r == kNoRoot) continue;
      u64 s1 = mul_mod(add_mod(b, r, p), half, p);
      u64 s2 = mul_mod(sub_mod(b, r, p), half, p);
      if (s1 > s2) std::swap(s1, s2);
      if (!(x1 == 0 && x2 == 0 && s1 == 0)) visit(detail_make_point(p, {x1, x2, s1}));
      if (s2 != s1) visit(detail_make_point(p, {x1, x2, s2}));
    }
  }
}

}  // namespace markoff
