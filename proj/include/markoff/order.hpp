#pragma once

#include <concepts>
#include <string>

#include "markoff/arith.hpp"
#include "markoff/fp.hpp"
#include "markoff/fp2.hpp"

namespace markoff {

template <class G>
concept GroupElement = requires(const G& x, u64 e) {
  { x.pow(e) } -> std::same_as<G>;
  { x.is_one() } -> std::convertible_to<bool>;
  { x.is_zero() } -> std::convertible_to<bool>;
};

/// Order of x in a group of exponent dividing `group_order`, found by
/// stripping prime factors of group_order while x^m stays 1.
template <GroupElement G>
u64 mult_order(const G& x, u64 group_order, const Factorization& factors) {
  if (x.is_zero()) throw NotAUnit("mult_order: zero is not a unit");
  if (group_order == 0 || factors.value() != group_order)
    throw InvalidArgument("mult_order: factorization does not match group order " + std::to_string(group_order));
  if (!x.pow(group_order).is_one())
    throw OrderMismatch("mult_order: x^" + std::to_string(group_order) + " != 1");

  u64 m = group_order;
  for (const auto& [q, e] : factors.terms()) {
    for (int k = 0; k < e; ++k) {
      if (!x.pow(m / q).is_one()) break;
      m /= q;
    }
  }
  return m;
}

template <GroupElement G>
u64 mult_order(const G& x, u64 group_order) {
  return mult_order(x, group_order, factorize(group_order));
}

}  // namespace markoff
