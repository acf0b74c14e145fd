#pragma once

// Exhaustive check that 2^nu2(p+1) divides ord_{p,i}(x) whenever x_i is
// elliptic and 3 x_i + 2 is a non-residue.

#include <vector>

#include "markoff/rotation.hpp"

namespace markoff {

inline constexpr u64 kExhaustiveGuard = 10'000;

struct TheoremCounterexample {
  MarkoffPoint point;
  int index;
  u64 order;
};

struct TheoremReport {
  u64 p = 0;
  int nu = 0;
  u64 points_tested = 0;
  u64 pairs_tested = 0;  // (point, coordinate) pairs meeting the hypotheses
  std::vector<TheoremCounterexample> counterexamples;
  std::vector<char> seen;  // residues occurring as a coordinate of some point

  bool ok() const { return counterexamples.empty(); }
};

/// Per-residue data shared by all points of X*(p): order and whether the
/// hypotheses of the divisibility statement hold for that coordinate value.
struct CoordinateTable {
  std::vector<u64> order;
  std::vector<CoordKind> kind;
  std::vector<char> qualifies;
};

inline CoordinateTable coordinate_table(Modulus p, FactorCache& cache = default_factor_cache()) {
  CoordinateTable table;
  table.order.resize(p.value());
  table.kind.resize(p.value());
  table.qualifies.resize(p.value());
  for (u64 v = 0; v < p.value(); ++v) {
    const FpElement x(v, p);
    const CoordClass cls = classify(x);
    table.kind[v] = cls.kind;
    table.order[v] = coordinate_order(x, cache);
    table.qualifies[v] = cls.kind == CoordKind::Elliptic && legendre(x * x.lift(3) + x.lift(2)) == -1;
  }
  return table;
}

inline TheoremReport theorem_main_check(u64 prime, bool force = false, FactorCache& cache = default_factor_cache()) {
  const Modulus p(prime);
  if (prime <= 5) throw PreconditionViolated("theorem_main_check requires p > 5");
  if (!force && prime > kExhaustiveGuard)
    throw GuardExceeded("exhaustive check limited to p <= " + std::to_string(kExhaustiveGuard) + " (use force)");

  TheoremReport report;
  report.p = prime;
  report.nu = nu2(prime + 1);
  const u64 power = u64{1} << report.nu;
  const CoordinateTable table = coordinate_table(p, cache);
  report.seen.assign(prime, 0);
  for_each_point(p, [&](const MarkoffPoint& t) {
    ++report.points_tested;
    for (int i = 1; i <= 3; ++i) {
      const u64 x = t.value(i);
      report.seen[x] = 1;
      if (!table.qualifies[x]) continue;
      ++report.pairs_tested;
      if (table.order[x] % power != 0) report.counterexamples.push_back({t, i, table.order[x]});
    }
  });
  return report;
}

}  // namespace markoff
