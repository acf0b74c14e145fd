#include <gtest/gtest.h>

#include <atomic>
#include <random>
#include <thread>

#include "markoff/rotation.hpp"
#include "markoff/theorem.hpp"
#include "oracles.hpp"

using namespace markoff;

namespace {

FpElement fp(u64 v, u64 p) { return FpElement(v, Modulus(p)); }
MarkoffPoint pt(u64 a, u64 b, u64 c, u64 p) { return MarkoffPoint(a, b, c, Modulus(p)); }

std::vector<MarkoffPoint> all_points(u64 p) {
  std::vector<MarkoffPoint> out;
  for (const auto& t : oracle::cubic_points(p)) out.push_back(pt(t[0], t[1], t[2], p));
  return out;
}

}  // namespace

// =============================================================================
// Surface and moves
// =============================================================================

TEST(IsMarkoff, Examples) {
  EXPECT_TRUE(is_markoff(fp(1, 7), fp(1, 7), fp(1, 7)));
  EXPECT_TRUE(is_markoff(fp(1, 7), fp(1, 7), fp(2, 7)));
  EXPECT_FALSE(is_markoff(fp(1, 7), fp(2, 7), fp(3, 7)));
  EXPECT_FALSE(is_markoff(fp(0, 7), fp(0, 7), fp(0, 7)));
  EXPECT_THROW(is_markoff(fp(1, 7), fp(1, 11), fp(1, 7)), ModulusMismatch);
  EXPECT_THROW(pt(1, 2, 3, 7), NotOnSurface);
}

TEST(Rotate, Examples) {
  const MarkoffPoint one = MarkoffPoint::origin(Modulus(7));
  EXPECT_EQ(rotate(one, 1, 1), pt(1, 1, 2, 7));
  EXPECT_EQ(rotate(one, 1, 2), pt(1, 2, 5, 7));
  EXPECT_EQ(rotate(one, 1, 0), one);
  EXPECT_THROW(rotate(one, 4, 1), InvalidArgument);
}

TEST(Rotate, MatchesLiteralFormulasAndPowers) {
  for (u64 p : {5u, 7u, 13u, 31u}) {
    for (const auto& t : all_points(p)) {
      for (int i = 1; i <= 3; ++i) {
        const auto want = oracle::rot(t.values(), i, p);
        ASSERT_EQ(rotate(t, i, 1).values(), want);
        // rot^e by repeated application
        MarkoffPoint cur = t;
        for (int e = 1; e <= 5; ++e) {
          cur = rotate(cur, i, 1);
          ASSERT_EQ(rotate(t, i, e), cur);
        }
        ASSERT_EQ(rotate(rotate(t, i, 1), i, -1), t);
        ASSERT_EQ(rotate(rotate(t, i, -3), i, 3), t);
      }
    }
  }
}

TEST(Rotate, HugeExponentReducesByOrder) {
  const MarkoffPoint one = MarkoffPoint::origin(Modulus(1000003));
  const u64 ord = rotation_order(one, 2);
  EXPECT_EQ(rotate(one, 2, static_cast<long long>(ord) * 1000000), one);
  EXPECT_EQ(rotate(one, 2, static_cast<long long>(ord) + 3), rotate(one, 2, 3));
}

TEST(Vieta, Examples) {
  EXPECT_EQ(vieta(MarkoffPoint::origin(Modulus(7)), 3), pt(1, 1, 2, 7));
  const MarkoffPoint moved = vieta(pt(1, 1, 2, 7), 1);
  EXPECT_EQ(moved, pt(5, 1, 2, 7));
  EXPECT_TRUE(is_markoff(moved.coord(1), moved.coord(2), moved.coord(3)));
}

TEST(Vieta, RotationIsTranspositionAfterInvolution) {
  for (const auto& t : all_points(13)) {
    EXPECT_EQ(rotate(t, 1, 1), transpose(vieta(t, 2), 2, 3));
    EXPECT_EQ(rotate(t, 2, 1), transpose(vieta(t, 1), 1, 3));
    EXPECT_EQ(rotate(t, 3, 1), transpose(vieta(t, 1), 1, 2));
  }
}

TEST(Moves, PreserveSurfaceExhaustivelyUpTo50) {
  for (u64 p : oracle::small_primes(3, 50)) {
    for (const auto& t : all_points(p)) {
      for (int i = 1; i <= 3; ++i) {
        for (long long e : {1LL, -1LL, 2LL}) {
          const MarkoffPoint r = rotate(t, i, e);
          ASSERT_TRUE(is_markoff(r.coord(1), r.coord(2), r.coord(3)));
          ASSERT_EQ(r.value(i), t.value(i));
        }
        const MarkoffPoint v = vieta(t, i);
        ASSERT_TRUE(is_markoff(v.coord(1), v.coord(2), v.coord(3)));
        ASSERT_EQ(vieta(v, i), t);
      }
    }
  }
}

TEST(Moves, PreserveSurfaceForRandomPointsAtLargeP) {
  std::mt19937_64 rng(3);
  for (u64 p : {u64{1000003}, u64{2147483647}, u64{2305843009213693951}}) {
    const Modulus m(p);
    int found = 0;
    while (found < 200) {
      const FpElement a(rng(), m), b(rng(), m);
      const FpElement bq = a * b * a.lift(3);
      const FpElement d = bq * bq - a.lift(4) * (a * a + b * b);
      if (legendre(d) < 0) continue;
      const FpElement c = (bq + sqrt_mod(d).first) * a.lift(2).inverse();
      const MarkoffPoint t(a, b, c);
      ++found;
      for (int i = 1; i <= 3; ++i) {
        const long long e = static_cast<long long>(rng() % 1000) - 500;
        const MarkoffPoint r = rotate(t, i, e);
        ASSERT_TRUE(is_markoff(r.coord(1), r.coord(2), r.coord(3)));
        ASSERT_EQ(rotate(r, i, -e), t);
        const MarkoffPoint v = vieta(t, i);
        ASSERT_TRUE(is_markoff(v.coord(1), v.coord(2), v.coord(3)));
      }
    }
  }
}

TEST(Moves, ConicInvariantAlongOrbits) {
  // x_j^2 + x_k^2 - 3 x_i x_j x_k = -x_i^2 on every rot_i orbit.
  for (u64 p : oracle::small_primes(5, 50)) {
    for (const auto& t : all_points(p)) {
      for (int i = 1; i <= 3; ++i) {
        MarkoffPoint cur = t;
        for (int step = 0; step < 4; ++step) {
          const FpElement xi = cur.coord(i);
          FpElement q = xi.lift(0);
          FpElement prod = xi.lift(1);
          for (int j = 1; j <= 3; ++j)
            if (j != i) {
              q += cur.coord(j) * cur.coord(j);
              prod *= cur.coord(j);
            }
          ASSERT_EQ(q - xi.lift(3) * xi * prod, -(xi * xi));
          cur = rotate(cur, i, 1);
        }
      }
    }
  }
}

TEST(ForEachPoint, MatchesCubicScan) {
  for (u64 p : oracle::small_primes(3, 50)) {
    std::vector<std::array<u64, 3>> got;
    for_each_point(Modulus(p), [&](const MarkoffPoint& t) { got.push_back(t.values()); });
    EXPECT_EQ(got, oracle::cubic_points(p)) << p;
  }
}

// =============================================================================
// Classification and rotation orders
// =============================================================================

TEST(Classify, Examples) {
  CoordClass c = classify(fp(1, 7));
  EXPECT_EQ(c.kind, CoordKind::Elliptic);
  EXPECT_EQ(c.discriminant.value(), 5u);
  c = classify(fp(1, 11));
  EXPECT_EQ(c.kind, CoordKind::Hyperbolic);
  EXPECT_EQ(c.discriminant.value(), 5u);
  c = classify(fp(3, 7));
  EXPECT_EQ(c.kind, CoordKind::Parabolic);
  EXPECT_EQ(c.discriminant.value(), 0u);
  EXPECT_THROW(classify(fp(1, 3)), InvalidArgument);
}

TEST(RotationOrder, Examples) {
  for (int i = 1; i <= 3; ++i) {
    EXPECT_EQ(rotation_order(MarkoffPoint::origin(Modulus(7)), i), 8u);
    EXPECT_EQ(rotation_order(MarkoffPoint::origin(Modulus(11)), i), 5u);
  }
  // x = 3 = 2/3 mod 7 is parabolic with order p; x = 4 = -2/3 has order 2p.
  EXPECT_EQ(coordinate_order(fp(3, 7)), 7u);
  EXPECT_EQ(coordinate_order(fp(4, 7)), 14u);
  EXPECT_EQ(mult_order(fp(9, 11), 10), 5u);
  EXPECT_EQ(hyperbolic_eigenvalue(fp(1, 11)).value(), 9u);  // (3 + 4)/2
}

TEST(RotationOrder, BruteForceExamples) {
  EXPECT_EQ(rotation_order_bruteforce(MarkoffPoint::origin(Modulus(7)), 1), 8u);
  EXPECT_THROW(rotation_order_bruteforce(MarkoffPoint::origin(Modulus(10007)), 1), GuardExceeded);
  EXPECT_EQ(rotation_order_bruteforce(MarkoffPoint::origin(Modulus(10007)), 1, 20000),
            rotation_order(MarkoffPoint::origin(Modulus(10007)), 1));
}

TEST(RotationOrder, FixedPointsHaveOrderOne) {
  // rot_i t = t forces x_i = 2/3 with (x_j, x_k) an eigenvector, which is off the surface.
  int fixed = 0;
  for (u64 p : {5u, 7u, 11u, 13u}) {
    for (const auto& t : all_points(p))
      for (int i = 1; i <= 3; ++i)
        if (rotate(t, i, 1) == t) {
          ++fixed;
          EXPECT_EQ(rotation_order_bruteforce(t, i), 1u);
        }
  }
  EXPECT_EQ(fixed, 0);
}

TEST(RotationOrder, ThreeRoutesAgreeExhaustively) {
  for (u64 p : {5u, 7u, 11u, 13u}) {
    for (const auto& t : all_points(p)) {
      for (int i = 1; i <= 3; ++i) {
        const u64 fast = rotation_order(t, i);
        ASSERT_EQ(fast, rotation_order_bruteforce(t, i));
        ASSERT_EQ(fast, oracle::orbit_length(t.values(), i, p));
        ASSERT_EQ(fast, oracle::matrix_order(t.value(i), p));
        ASSERT_EQ(fast, matrix_order(t.coord(i)));
      }
    }
  }
}

TEST(RotationOrder, MatrixOrderForCoordinatesUpTo50) {
  for (u64 p : oracle::small_primes(5, 50)) {
    std::vector<char> seen(p, 0);
    for (const auto& t : oracle::cubic_points(p))
      for (u64 x : t) seen[x] = 1;
    for (u64 x = 0; x < p; ++x)
      if (seen[x]) {
        ASSERT_EQ(coordinate_order(fp(x, p)), oracle::matrix_order(x, p)) << x << " mod " << p;
      }
  }
}

TEST(RotationOrder, DivisibilityByClassUpTo200) {
  for (u64 p : oracle::small_primes(5, 200)) {
    const FpElement two_thirds = fp(2, p) / fp(3, p);
    for (u64 v = 0; v < p; ++v) {
      const FpElement x = fp(v, p);
      const u64 ord = coordinate_order(x);
      switch (classify(x).kind) {
        case CoordKind::Hyperbolic: ASSERT_EQ((p - 1) % ord, 0u); break;
        case CoordKind::Elliptic: ASSERT_EQ((p + 1) % ord, 0u); break;
        case CoordKind::Parabolic:
          ASSERT_TRUE(x == two_thirds || x == -two_thirds);
          ASSERT_EQ(ord, x == two_thirds ? p : 2 * p);
          ASSERT_EQ(ord, oracle::matrix_order(v, p));
          break;
      }
    }
  }
}

TEST(RotationOrder, EigenvalueSatisfiesCharacteristicPolynomial) {
  for (u64 p : oracle::small_primes(5, 100)) {
    for (u64 v = 0; v < p; ++v) {
      const FpElement x = fp(v, p);
      const CoordKind k = classify(x).kind;
      if (k == CoordKind::Hyperbolic) {
        const FpElement e = hyperbolic_eigenvalue(x);
        ASSERT_EQ(e * e - x.lift(3) * x * e + x.lift(1), x.lift(0));
        ASSERT_TRUE((e * (x * x.lift(3) - e)).is_one());  // eps * conj = 1, eps + conj = 3x
      } else if (k == CoordKind::Elliptic) {
        const Fp2Element e = elliptic_eigenvalue(x);
        ASSERT_TRUE((e * e.conjugate()).is_one());
        ASSERT_EQ((e + e.conjugate()).a(), x * x.lift(3));
      }
    }
  }
}

TEST(PointOrder, ExamplesAndBound) {
  EXPECT_EQ(point_order(MarkoffPoint::origin(Modulus(7))), 8u);
  const MarkoffPoint t = pt(1, 1, 2, 7);
  EXPECT_EQ(rotation_order_bruteforce(t, 3), 3u);
  EXPECT_EQ(point_order(t), 8u);
  for (const auto& s : all_points(13))
    for (int i = 1; i <= 3; ++i) EXPECT_GE(point_order(s), rotation_order(s, i));
}

TEST(IsMaximal, Examples) {
  const MaximalWitness w7 = is_maximal(MarkoffPoint::origin(Modulus(7)));
  EXPECT_TRUE(w7.maximal);
  EXPECT_EQ(w7.index, 1);
  EXPECT_EQ(w7.kind, CoordKind::Elliptic);
  EXPECT_EQ(w7.order, 8u);
  EXPECT_FALSE(is_maximal(MarkoffPoint::origin(Modulus(11))));
  const MaximalWitness w127 = is_maximal(MarkoffPoint::origin(Modulus(127)));
  EXPECT_TRUE(w127.maximal);
  EXPECT_EQ(w127.order, 128u);
}

TEST(IsMaximal, WitnessIndexIsFirstMaximalCoordinate) {
  // (1,1,2) mod 7: x=1 has order 8 = p+1, x=2 has order 3.
  const MaximalWitness w = is_maximal(pt(2, 1, 1, 7));
  EXPECT_TRUE(w.maximal);
  EXPECT_EQ(w.index, 2);
}

TEST(FactorCache, SharedAcrossThreads) {
  FactorCache cache;
  std::vector<std::thread> pool;
  std::atomic<int> mismatches{0};
  for (int w = 0; w < 4; ++w)
    pool.emplace_back([&] {
      for (u64 p : oracle::small_primes(5, 2000))
        if (cache.get(p).above.value() != p + 1 || cache.get(p).below.value() != p - 1) ++mismatches;
    });
  for (auto& t : pool) t.join();
  EXPECT_EQ(mismatches.load(), 0);
}

// =============================================================================
// 2^nu | ord for elliptic x with (3x+2 | p) = -1
// =============================================================================

TEST(TheoremCheck, SmallPrimes) {
  for (u64 p : {7u, 11u, 13u}) {
    const TheoremReport r = theorem_main_check(p);
    EXPECT_TRUE(r.ok()) << p;
    EXPECT_EQ(r.points_tested, oracle::cubic_points(p).size());
    EXPECT_GT(r.pairs_tested, 0u);
  }
  EXPECT_EQ(theorem_main_check(7).nu, 3);
  EXPECT_EQ(theorem_main_check(13).nu, 1);
}

TEST(TheoremCheck, PairCountMatchesDirectCount) {
  const u64 p = 23;
  u64 pairs = 0;
  for (const auto& t : oracle::cubic_points(p))
    for (u64 x : t)
      pairs += oracle::legendre_by_table((9 * x * x + 4 * p - 4) % p, p) == -1 &&
               oracle::legendre_by_table((3 * x + 2) % p, p) == -1;
  EXPECT_EQ(theorem_main_check(p).pairs_tested, pairs);
}

TEST(TheoremCheck, ZeroCounterexamplesBelow200) {
  for (u64 p : oracle::small_primes(7, 199)) EXPECT_TRUE(theorem_main_check(p).ok()) << p;
}

TEST(TheoremCheck, Guards) {
  EXPECT_THROW(theorem_main_check(5), PreconditionViolated);
  EXPECT_THROW(theorem_main_check(10007), GuardExceeded);
  EXPECT_THROW(theorem_main_check(15), InvalidArgument);
}
