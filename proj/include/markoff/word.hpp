#pragma once

// Rotation words and their replay over F_p and over the integers.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "markoff/point.hpp"

namespace markoff {

/// Product of rotation powers, applied left to right. Normal form: no zero
/// exponents and no two adjacent moves with the same generator.
class RotationWord {
 public:
  struct Move {
    int generator;  // 1, 2 or 3
    long long exponent;
    friend bool operator==(const Move&, const Move&) = default;
  };

  RotationWord() = default;

  /// Appends rot_i^e, merging with the last move when the generator repeats.
  RotationWord& append(int generator, long long exponent) {
    MarkoffPoint::check_index(generator);
    if (exponent == 0) return *this;
    if (!moves_.empty() && moves_.back().generator == generator) {
      moves_.back().exponent += exponent;
      if (moves_.back().exponent == 0) moves_.pop_back();
    } else {
      moves_.push_back({generator, exponent});
    }
    return *this;
  }

  const std::vector<Move>& moves() const { return moves_; }
  bool empty() const { return moves_.empty(); }

  /// Number of single rotation steps, sum of |exponent|.
  u64 total_moves() const {
    u64 n = 0;
    for (const auto& m : moves_) n += static_cast<u64>(std::llabs(m.exponent));
    return n;
  }

  MarkoffPoint apply(const MarkoffPoint& start) const {
    MarkoffPoint t = start;
    for (const auto& m : moves_) t = rotate(t, m.generator, m.exponent);
    return t;
  }

  std::string to_string() const {
    if (moves_.empty()) return "id";
    std::ostringstream os;
    for (std::size_t k = 0; k < moves_.size(); ++k) {
      if (k) os << ' ';
      os << "rot" << moves_[k].generator;
      if (moves_[k].exponent != 1) os << '^' << moves_[k].exponent;
    }
    return os.str();
  }

  friend bool operator==(const RotationWord&, const RotationWord&) = default;
  friend std::ostream& operator<<(std::ostream& os, const RotationWord& w) { return os << w.to_string(); }

 private:
  std::vector<Move> moves_;
};

using BigInt = boost::multiprecision::cpp_int;

struct IntegerTriple {
  BigInt x1, x2, x3;

  bool satisfies_markoff() const { return x1 * x1 + x2 * x2 + x3 * x3 == 3 * x1 * x2 * x3; }

  MarkoffPoint reduce(Modulus p) const {
    auto r = [&](const BigInt& v) {
      BigInt m = v % p.value();
      if (m < 0) m += p.value();
      return FpElement(m.convert_to<u64>(), p);
    };
    return MarkoffPoint(r(x1), r(x2), r(x3));
  }

  /// Decimal digits of the largest coordinate in absolute value.
  std::size_t max_digits() const {
    std::size_t d = 0;
    for (const BigInt* v : {&x1, &x2, &x3}) {
      BigInt a = abs(*v);
      d = std::max(d, a.is_zero() ? std::size_t{1} : a.str().size());
    }
    return d;
  }

  /// Coordinates longer than `digit_limit` digits are rendered as "<N digits>".
  std::string to_string(std::size_t digit_limit = 10'000) const {
    auto fmt = [&](const BigInt& v) {
      std::string s = v.str();
      if (s.size() > digit_limit) return "<" + std::to_string(s.size() - (s[0] == '-' ? 1 : 0)) + " digits>";
      return s;
    };
    return "(" + fmt(x1) + "," + fmt(x2) + "," + fmt(x3) + ")";
  }

  friend bool operator==(const IntegerTriple&, const IntegerTriple&) = default;
};

inline constexpr u64 kDefaultLiftCap = 1'000'000;

/// Replays the word from (1,1,1) over the integers.
inline IntegerTriple lift(const RotationWord& word, u64 cap = kDefaultLiftCap) {
  if (word.total_moves() > cap)
    throw CapExceeded("word has " + std::to_string(word.total_moves()) + " moves, cap is " + std::to_string(cap));
  std::array<BigInt, 3> x{1, 1, 1};
  for (const auto& m : word.moves()) {
    const auto [j, k] = detail::kMoving[m.generator - 1];
    const BigInt c3 = 3 * x[m.generator - 1];
    const long long steps = std::llabs(m.exponent);
    for (long long s = 0; s < steps; ++s) {
      if (m.exponent > 0) {
        BigInt next = c3 * x[k] - x[j];
        x[j] = std::move(x[k]);
        x[k] = std::move(next);
      } else {
        BigInt prev = c3 * x[j] - x[k];
        x[k] = std::move(x[j]);
        x[j] = std::move(prev);
      }
    }
  }
  return {x[0], x[1], x[2]};
}

}  // namespace markoff
