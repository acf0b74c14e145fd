#pragma once

// Coordinate classification, rotation orders and maximality.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string_view>

#include "markoff/norm_map.hpp"
#include "markoff/order.hpp"
#include "markoff/point.hpp"

namespace markoff {

enum class CoordKind { Parabolic, Hyperbolic, Elliptic };

inline constexpr std::string_view to_string(CoordKind k) {
  switch (k) {
    case CoordKind::Parabolic: return "parabolic";
    case CoordKind::Hyperbolic: return "hyperbolic";
    case CoordKind::Elliptic: return "elliptic";
  }
  return "?";
}

inline std::optional<CoordKind> parse_coord_kind(std::string_view s) {
  for (CoordKind k : {CoordKind::Parabolic, CoordKind::Hyperbolic, CoordKind::Elliptic})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

struct CoordClass {
  CoordKind kind;
  FpElement discriminant;
};

inline void require_p_above_3(u64 p) {
  if (p <= 3) throw InvalidArgument("rotation orders are defined for p > 3 only, got p = " + std::to_string(p));
}

/// Kind of x from Delta_x = 9x^2 - 4.
inline CoordClass classify(const FpElement& x) {
  require_p_above_3(x.modulus());
  const FpElement d = discriminant(x);
  switch (legendre(d)) {
    case 0: return {CoordKind::Parabolic, d};
    case 1: return {CoordKind::Hyperbolic, d};
    default: return {CoordKind::Elliptic, d};
  }
}

/// Factorizations of p - 1 and p + 1, computed once per prime. Thread-safe.
class FactorCache {
 public:
  struct Entry {
    Factorization below;  // p - 1
    Factorization above;  // p + 1
  };

  const Entry& get(u64 p) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = entries_.find(p); it != entries_.end()) return *it->second;
    }
    auto fresh = std::make_unique<Entry>(Entry{factorize(p - 1), factorize(p + 1)});
    std::unique_lock lock(mutex_);
    auto [it, inserted] = entries_.try_emplace(p, std::move(fresh));
    return *it->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<u64, std::unique_ptr<Entry>> entries_;
};

inline FactorCache& default_factor_cache() {
  static FactorCache cache;
  return cache;
}

/// Hyperbolic eigenvalue epsilon = (3x + r)/2 in F_p, r the smaller root of Delta.
inline FpElement hyperbolic_eigenvalue(const FpElement& x) {
  const FpElement r = sqrt_mod(discriminant(x)).first;
  return (x * x.lift(3) + r) * x.lift(2).inverse();
}

/// Order of A_x acting on the rot_i orbit of any point whose i-th coordinate is x.
inline u64 coordinate_order(const FpElement& x, FactorCache& cache = default_factor_cache()) {
  const u64 p = x.modulus();
  const CoordClass cls = classify(x);
  switch (cls.kind) {
    case CoordKind::Parabolic: {
      const FpElement two_thirds = x.lift(2) * x.lift(3).inverse();
      if (x == two_thirds) return p;
      if (x == -two_thirds) return 2 * p;
      throw InvariantViolation("parabolic coordinate is not +-2/3");
    }
    case CoordKind::Hyperbolic:
      return mult_order(hyperbolic_eigenvalue(x), p - 1, cache.get(p).below);
    case CoordKind::Elliptic:
      return mult_order(elliptic_eigenvalue(x), p + 1, cache.get(p).above);
  }
  return 0;
}

inline u64 rotation_order(const MarkoffPoint& t, int i, FactorCache& cache = default_factor_cache()) {
  return coordinate_order(t.coord(i), cache);
}

inline constexpr u64 kBruteForceGuard = 10'000;

/// Orbit length by literal iteration of rot_i.
inline u64 rotation_order_bruteforce(const MarkoffPoint& t, int i, u64 guard = kBruteForceGuard) {
  if (t.modulus() > guard)
    throw GuardExceeded("brute-force rotation order limited to p <= " + std::to_string(guard));
  MarkoffPoint cur = rotate(t, i, 1);
  u64 n = 1;
  while (cur != t) {
    cur = rotate(cur, i, 1);
    ++n;
  }
  return n;
}

/// Order of A_x in GL_2(F_p) by repeated 2x2 multiplication.
inline u64 matrix_order(const FpElement& x, u64 guard = kBruteForceGuard) {
  const u64 p = x.modulus();
  if (p > guard) throw GuardExceeded("matrix order limited to p <= " + std::to_string(guard));
  const detail::Mat2 a = detail::rotation_matrix(x.value(), p);
  detail::Mat2 m = a;
  u64 n = 1;
  while (!(m.m00 == 1 && m.m01 == 0 && m.m10 == 0 && m.m11 == 1)) {
    m = detail::mat_mul(m, a, p);
    ++n;
  }
  return n;
}

/// max_i ord_{p,i}(t).
inline u64 point_order(const MarkoffPoint& t, FactorCache& cache = default_factor_cache()) {
  u64 best = 0;
  for (int i = 1; i <= 3; ++i) best = std::max(best, rotation_order(t, i, cache));
  return best;
}

/// The order value that makes a coordinate of this kind maximal.
inline u64 maximal_order(CoordKind kind, u64 p) {
  switch (kind) {
    case CoordKind::Hyperbolic: return p - 1;
    case CoordKind::Elliptic: return p + 1;
    case CoordKind::Parabolic: return 2 * p;
  }
  return 0;
}

inline bool is_maximal_coordinate(const FpElement& x, FactorCache& cache = default_factor_cache()) {
  return coordinate_order(x, cache) == maximal_order(classify(x).kind, x.modulus());
}

struct MaximalWitness {
  bool maximal = false;
  int index = 0;  // 1-based; 0 when not maximal
  CoordKind kind = CoordKind::Elliptic;
  u64 order = 0;

  explicit operator bool() const { return maximal; }
};

/// First coordinate whose rotation order is p-1, p+1 or 2p (matching its kind).
inline MaximalWitness is_maximal(const MarkoffPoint& t, FactorCache& cache = default_factor_cache()) {
  for (int i = 1; i <= 3; ++i) {
    const FpElement x = t.coord(i);
    const CoordKind kind = classify(x).kind;
    const u64 ord = coordinate_order(x, cache);
    if (ord == maximal_order(kind, t.modulus())) return {true, i, kind, ord};
  }
  return {};
}

}  // namespace markoff
