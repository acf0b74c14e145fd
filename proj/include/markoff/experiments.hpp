#pragma once

// Verification suites behind the command-line front end.

#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "markoff/graph.hpp"
#include "markoff/pisano.hpp"
#include "markoff/sweep.hpp"
#include "markoff/theorem.hpp"

namespace markoff {

// ---------------------------------------------------------------------------
// Mersenne primes

inline constexpr int kMersenneExponentGuard = 31;

struct MersenneEntry {
  int exponent = 0;
  u64 p = 0;
  u64 mod5 = 0;
  bool included = false;
  std::string exclusion;  // why the prime is outside the +-2 mod 5, p > 5 family
  u64 ord111 = 0;         // pi(p)/2 by Fibonacci iteration
  u64 eigen_order = 0;    // ord of (1,1,1) via the eigenvalue route
  bool maximal_elliptic = false;

  bool ok() const { return !included || (ord111 == p + 1 && eigen_order == ord111 && maximal_elliptic); }
};

struct MersenneReport {
  std::vector<MersenneEntry> entries;

  bool ok() const {
    for (const auto& e : entries)
      if (!e.ok()) return false;
    return true;
  }
};

inline MersenneReport mersenne_report(int max_exponent, bool force = false) {
  if (max_exponent < 1) throw InvalidArgument("max exponent must be positive");
  if (max_exponent > 62) throw InvalidArgument("max exponent must be at most 62");
  if (!force && max_exponent > kMersenneExponentGuard)
    throw GuardExceeded("Mersenne check limited to exponents <= 31 (use force)");

  MersenneReport report;
  for (int n = 2; n <= max_exponent; ++n) {
    const u64 p = (u64{1} << n) - 1;
    if (!is_prime(p)) continue;
    MersenneEntry e;
    e.exponent = n;
    e.p = p;
    e.mod5 = p % 5;
    if (p <= 5) {
      e.exclusion = "p <= 5";
    } else if (e.mod5 != 2 && e.mod5 != 3) {
      e.exclusion = "p = " + std::to_string(e.mod5) + " mod 5";
    } else {
      e.included = true;
      e.ord111 = order111(p, force);
      const MarkoffPoint origin = MarkoffPoint::origin(Modulus(p));
      e.eigen_order = rotation_order(origin, 1);
      const MaximalWitness w = is_maximal(origin);
      e.maximal_elliptic = w.maximal && w.kind == CoordKind::Elliptic;
    }
    report.entries.push_back(e);
  }
  return report;
}

inline nlohmann::json to_json(const MersenneReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : r.entries) {
    nlohmann::json j = {{"exponent", e.exponent}, {"p", e.p}, {"mod5", e.mod5}, {"included", e.included}};
    if (e.included) {
      j["ord111"] = e.ord111;
      j["eigen_order"] = e.eigen_order;
      j["maximal_elliptic"] = e.maximal_elliptic;
      j["ok"] = e.ok();
    } else {
      j["excluded_because"] = e.exclusion;
    }
    rows.push_back(j);
  }
  return {{"command", "mersenne"}, {"entries", rows}, {"ok", r.ok()}};
}

// ---------------------------------------------------------------------------
// Exhaustive verification over a range of primes

struct CheckTally {
  u64 checked = 0;
  u64 failures = 0;
};

struct VerifyReport {
  u64 p_max = 0;
  u64 primes = 0;
  u64 points = 0;
  CheckTally theorem;        // 2^nu | ord for qualifying (point, coordinate) pairs
  CheckTally divisibility;   // ord | p-1 or p+1, A_x^ord = I; parabolic x = +-2/3 with ord p / 2p
  CheckTally order111;       // pi(p)/2 = ord_{p,i}(1,1,1), i = 1, 2, 3
  CheckTally vince;          // 2^(nu+1) | pi(p) for p = +-2 mod 5
  CheckTally cage_threshold; // nu2(p+1) > log2((p+1)/2) forces ord = p+1 on qualifying coordinates
  CheckTally hyperbolic_111; // (5|p) = 1 gives ord111 <= (p-1)/2 and (1,1,1) outside the cage
  u64 parabolic_coordinates = 0;  // residues +-2/3 seen as coordinates, summed over primes
  std::vector<std::string> failures;

  u64 total_failures() const {
    return theorem.failures + divisibility.failures + order111.failures + vince.failures + cage_threshold.failures +
           hyperbolic_111.failures;
  }
  bool ok() const { return total_failures() == 0; }
};

namespace detail {

inline bool matrix_power_is_identity(u64 x, u64 e, u64 p) {
  const Mat2 m = mat_pow(rotation_matrix(x, p), e, p);
  return m.m00 == 1 && m.m01 == 0 && m.m10 == 0 && m.m11 == 1;
}

inline void tally(CheckTally& t, bool pass, std::vector<std::string>& failures, const std::string& what) {
  ++t.checked;
  if (!pass) {
    ++t.failures;
    if (failures.size() < 100) failures.push_back(what);
  }
}

}  // namespace detail

inline VerifyReport verify_report(u64 p_max, bool force = false, FactorCache& cache = default_factor_cache()) {
  if (p_max == 0) throw InvalidArgument("pmax must be positive");
  if (!force && p_max > kExhaustiveGuard)
    throw GuardExceeded("exhaustive verification limited to pmax <= 10^4 (use force)");

  VerifyReport rep;
  rep.p_max = p_max;
  for (u64 p : primes_in_range(7, p_max)) {
    ++rep.primes;
    const Modulus mod(p);
    const std::string at = " at p=" + std::to_string(p);

    const TheoremReport th = theorem_main_check(p, force, cache);
    rep.points += th.points_tested;
    rep.theorem.checked += th.pairs_tested;
    rep.theorem.failures += th.counterexamples.size();
    for (const auto& c : th.counterexamples)
      if (rep.failures.size() < 100)
        rep.failures.push_back("2^nu does not divide ord " + std::to_string(c.order) + at);

    const CoordinateTable table = coordinate_table(mod, cache);
    const FpElement two_thirds = FpElement(2, mod) / FpElement(3, mod);
    for (u64 x = 0; x < p; ++x) {
      if (!th.seen[x]) continue;
      const u64 ord = table.order[x];
      bool pass = detail::matrix_power_is_identity(x, ord, p);
      switch (table.kind[x]) {
        case CoordKind::Hyperbolic: pass = pass && (p - 1) % ord == 0; break;
        case CoordKind::Elliptic: pass = pass && (p + 1) % ord == 0; break;
        case CoordKind::Parabolic: {
          ++rep.parabolic_coordinates;
          const FpElement fx(x, mod);
          const u64 expected = fx == two_thirds ? p : (fx == -two_thirds ? 2 * p : 0);
          pass = pass && ord == expected;
          for (u64 d : {u64{1}, u64{2}, p})
            if (d < ord && ord % d == 0) pass = pass && !detail::matrix_power_is_identity(x, d, p);
          break;
        }
      }
      detail::tally(rep.divisibility, pass, rep.failures, "order bound fails for x=" + std::to_string(x) + at);
    }

    const u64 o111 = order111(p, force);
    const MarkoffPoint origin = MarkoffPoint::origin(mod);
    for (int i = 1; i <= 3; ++i)
      detail::tally(rep.order111, rotation_order(origin, i, cache) == o111, rep.failures,
                    "pi(p)/2 != ord_" + std::to_string(i) + "(1,1,1)" + at);

    if (p % 5 == 2 || p % 5 == 3) detail::tally(rep.vince, vince_check(p, force), rep.failures, "Vince bound fails" + at);

    // nu2(p+1) > log2((p+1)/2)  <=>  2^(nu+1) > p+1
    const int nu = nu2(p + 1);
    if ((u64{1} << (nu + 1)) > p + 1) {
      for (u64 x = 0; x < p; ++x)
        if (th.seen[x] && table.qualifies[x])
          detail::tally(rep.cage_threshold, table.order[x] == p + 1, rep.failures,
                        "qualifying x=" + std::to_string(x) + " not maximal" + at);
    }

    if (legendre(FpElement(5, mod)) == 1) {
      const bool in_cage = o111 == maximal_order(CoordKind::Hyperbolic, p);
      detail::tally(rep.hyperbolic_111, o111 <= (p - 1) / 2 && !in_cage, rep.failures,
                    "hyperbolic (1,1,1) too large" + at);
    }
  }
  return rep;
}

inline nlohmann::json to_json(const VerifyReport& r) {
  auto t = [](const CheckTally& c) { return nlohmann::json{{"checked", c.checked}, {"failures", c.failures}}; };
  return {{"command", "verify"},
          {"pmax", r.p_max},
          {"primes", r.primes},
          {"points", r.points},
          {"theorem_2nu_divides_order", t(r.theorem)},
          {"order_divisibility", t(r.divisibility)},
          {"order111_equals_half_pisano", t(r.order111)},
          {"vince", t(r.vince)},
          {"cage_threshold", t(r.cage_threshold)},
          {"hyperbolic_111_excluded", t(r.hyperbolic_111)},
          {"parabolic_coordinates_seen", r.parabolic_coordinates},
          {"counterexamples", r.total_failures()},
          {"failures", r.failures},
          {"ok", r.ok()}};
}

// ---------------------------------------------------------------------------
// Single point inspection

inline constexpr u64 kPathQueryGuard = 2'000;

struct PointOptions {
  bool force = false;
  u64 word_cap = kDefaultLiftCap;
  u64 path_guard = kPathQueryGuard;
};

inline nlohmann::json point_report(u64 prime, u64 a, u64 b, u64 c, const PointOptions& opt = {}) {
  const Modulus p(prime);
  require_p_above_3(prime);
  const MarkoffPoint t(FpElement(a, p), FpElement(b, p), FpElement(c, p));

  nlohmann::json coords = nlohmann::json::array();
  for (int i = 1; i <= 3; ++i) {
    const FpElement x = t.coord(i);
    const CoordClass cls = classify(x);
    coords.push_back({{"index", i},
                      {"value", x.value()},
                      {"class", std::string(to_string(cls.kind))},
                      {"discriminant", cls.discriminant.value()},
                      {"order", rotation_order(t, i)}});
  }
  const MaximalWitness w = is_maximal(t);
  nlohmann::json out = {{"command", "point"},
                        {"p", prime},
                        {"point", {t.value(1), t.value(2), t.value(3)}},
                        {"coordinates", coords},
                        {"point_order", point_order(t)},
                        {"maximal", w.maximal},
                        {"in_cage", w.maximal}};
  if (w.maximal) out["witness"] = {{"index", w.index}, {"kind", std::string(to_string(w.kind))}, {"order", w.order}};

  if (!opt.force && prime > opt.path_guard) {
    out["graph"] = {{"error", "GuardExceeded"},
                    {"message", "path queries limited to p <= " + std::to_string(opt.path_guard) + " (use force)"}};
    return out;
  }

  const MarkoffGraph g(prime, Enumeration::Auto, true);
  const auto v = *g.index_of(t);
  const CageReport cage = cage_subgraph(g);
  const BfsTree from_point(g, v);
  std::int64_t to_cage = -1;
  for (auto u : cage.vertices) {
    const auto d = from_point.distance(u);
    if (d >= 0 && (to_cage < 0 || d < to_cage)) to_cage = d;
  }
  nlohmann::json graph = {{"vertices", g.size()},
                          {"components", g.component_count()},
                          {"distance_to_cage", to_cage < 0 ? nlohmann::json(nullptr) : nlohmann::json(to_cage)}};

  const BfsTree from_origin(g);
  graph["connected_to_origin"] = from_origin.reached(v);
  if (from_origin.reached(v)) {
    const RotationWord word = from_origin.path_to(v);
    graph["distance_from_origin"] = from_origin.distance(v);
    graph["word"] = word.to_string();
    try {
      const IntegerTriple lifted = lift(word, opt.word_cap);
      graph["lift"] = lifted.to_string();
      graph["lift_digits"] = lifted.max_digits();
      graph["lift_satisfies_markoff"] = lifted.satisfies_markoff();
    } catch (const CapExceeded& e) {
      graph["lift"] = nullptr;
      graph["lift_error"] = e.what();
    }
  }
  out["graph"] = graph;
  return out;
}

}  // namespace markoff
