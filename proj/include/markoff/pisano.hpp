#pragma once

// Fibonacci numbers modulo n and Pisano periods. Indexing is F_0 = 0, F_1 = 1.

#include <optional>
#include <string>
#include <utility>

#include "markoff/arith.hpp"
#include "markoff/errors.hpp"

namespace markoff {

/// (F_k mod n, F_{k+1} mod n) by fast doubling.
inline std::pair<u64, u64> fib_pair(u64 k, u64 n) {
  if (n < 2) throw InvalidArgument("fib_pair: modulus must be >= 2");
  if (n >= (u64{1} << 63)) throw InvalidArgument("fib_pair: modulus must be below 2^63");
  u64 a = 0, b = 1 % n;  // F_0, F_1
  for (int bit = 63; bit >= 0; --bit) {
    // F_2m = F_m (2 F_{m+1} - F_m),  F_2m+1 = F_m^2 + F_{m+1}^2
    const u64 c = mul_mod(a, sub_mod(add_mod(b, b, n), a, n), n);
    const u64 d = add_mod(mul_mod(a, a, n), mul_mod(b, b, n), n);
    if ((k >> bit) & 1) {
      a = d;
      b = add_mod(c, d, n);
    } else {
      a = c;
      b = d;
    }
  }
  return {a, b};
}

struct PisanoRecord {
  u64 modulus;
  u64 period;
  std::optional<u64> half_period;  // present when the period is even
};

inline constexpr u64 kPisanoGuard = u64{1} << 32;

/// Minimal period of (F_k, F_{k+1}) mod n by direct iteration.
inline PisanoRecord pisano(u64 n, bool force = false) {
  if (n < 2) throw InvalidArgument("pisano: modulus must be >= 2");
  if (!force && n >= kPisanoGuard) throw GuardExceeded("pisano iteration limited to n < 2^32 (use force)");
  if (n >= (u64{1} << 62)) throw InvalidArgument("pisano: modulus too large");

  u64 a = 0, b = 1, k = 0;
  do {
    const u64 s = a + b;
    a = b;
    b = s >= n ? s - n : s;
    ++k;
  } while (a != 0 || b != 1);

  PisanoRecord rec{n, k, std::nullopt};
  if (k % 2 == 0) rec.half_period = k / 2;
  if (n > 2 && !rec.half_period) throw InvariantViolation("odd Pisano period for n = " + std::to_string(n));
  return rec;
}

/// ord_{p,i}(1,1,1) = pi(p)/2 for primes p > 5.
inline u64 order111(u64 p, bool force = false) {
  if (p <= 5 || !is_prime(p)) throw PreconditionViolated("order111 requires a prime p > 5");
  return *pisano(p, force).half_period;
}

/// 2^(nu2(p+1)+1) | pi(p) for odd primes p = +-2 mod 5. p = 2 is outside the
/// statement's range: pi(2) = 3 is odd.
inline bool vince_check(u64 p, bool force = false) {
  if (p == 2 || !is_prime(p)) throw PreconditionViolated("vince_check requires an odd prime");
  if (p % 5 != 2 && p % 5 != 3) throw WrongResidueClass(std::to_string(p) + " is not +-2 mod 5");
  const u64 power = u64{1} << (nu2(p + 1) + 1);
  return pisano(p, force).period % power == 0;
}

}  // namespace markoff
