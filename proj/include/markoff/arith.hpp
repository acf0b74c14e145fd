#pragma once

// Word-size modular arithmetic, primality and factorization.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "markoff/errors.hpp"

namespace markoff {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline constexpr u64 add_mod(u64 a, u64 b, u64 m) {
  // a, b < m < 2^63 so the sum cannot wrap.
  u64 s = a + b;
  return s >= m ? s - m : s;
}

inline constexpr u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline constexpr u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Largest k with 2^k | n.
inline constexpr int nu2(u64 n) {
  if (n == 0) throw InvalidArgument("nu2: argument must be positive");
  return __builtin_ctzll(n);
}

namespace detail {

inline constexpr bool miller_rabin_round(u64 n, u64 d, int s, u64 a) {
  a %= n;
  if (a == 0) return true;
  u64 x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace detail

/// Deterministic for every n < 2^64 (first twelve prime bases).
inline constexpr bool is_prime(u64 n) {
  if (n < 2) return false;
  constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 q : small) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : small) {
    if (!detail::miller_rabin_round(n, d, s, a)) return false;
  }
  return true;
}

/// Prime-power decomposition, primes strictly increasing.
class Factorization {
 public:
  struct Term {
    u64 prime;
    int exponent;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Factorization() = default;

  /// Validates the invariants; throws InvalidArgument otherwise.
  explicit Factorization(std::vector<Term> terms) : terms_(std::move(terms)) {
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      if (terms_[k].exponent < 1 || !is_prime(terms_[k].prime))
        throw InvalidArgument("Factorization: bad term");
      if (k > 0 && terms_[k - 1].prime >= terms_[k].prime)
        throw InvalidArgument("Factorization: primes must be strictly increasing");
    }
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Product of the terms, or 0 if it overflows 64 bits.
  u64 value() const {
    u128 acc = 1;
    for (const auto& t : terms_) {
      for (int e = 0; e < t.exponent; ++e) {
        acc *= t.prime;
        if (acc >> 64) return 0;
      }
    }
    return static_cast<u64>(acc);
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::vector<Term> terms_;
};

namespace detail {

// Brent's variant of Pollard rho. n must be an odd composite.
inline u64 pollard_rho(u64 n) {
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 v) { return add_mod(mul_mod(v, v, n), c, n); };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    constexpr u64 block = 128;
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(block, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += block;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void collect_factors(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_rho(n);
  collect_factors(d, out);
  collect_factors(n / d, out);
}

}  // namespace detail

/// Complete factorization: trial division below 10^6, then Pollard rho.
inline Factorization factorize(u64 n) {
  if (n == 0) throw InvalidArgument("factorize: argument must be positive");
  std::vector<u64> primes;
  constexpr u64 trial_limit = 1'000'000;
  for (u64 q = 2; q < trial_limit && q * q <= n; q += (q == 2 ? 1 : 2)) {
    while (n % q == 0) {
      primes.push_back(q);
      n /= q;
    }
  }
  if (n > 1) detail::collect_factors(n, primes);
  std::sort(primes.begin(), primes.end());

  std::vector<Factorization::Term> terms;
  for (u64 q : primes) {
    if (!terms.empty() && terms.back().prime == q)
      ++terms.back().exponent;
    else
      terms.push_back({q, 1});
  }
  return Factorization(std::move(terms));
}

/// Primes in [lo, hi] by a sieve of Eratosthenes over odd numbers.
inline std::vector<u64> primes_in_range(u64 lo, u64 hi) {
  std::vector<u64> out;
  if (hi < 2 || lo > hi) return out;
  if (lo <= 2) out.push_back(2);
  const u64 half = (hi - 1) / 2;  // index k stands for 2k+1
  std::vector<bool> composite(half + 1, false);
  for (u64 k = 1; k <= half; ++k) {
    if (composite[k]) continue;
    const u64 q = 2 * k + 1;
    if (q >= lo) out.push_back(q);
    if (q > hi / q) continue;
    for (u64 m = q * q; m <= hi; m += 2 * q) composite[m / 2] = true;
  }
  return out;
}

}  // namespace markoff
