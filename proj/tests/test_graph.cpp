#include <gtest/gtest.h>

#include <map>
#include <queue>
#include <random>
#include <sstream>

#include "markoff/graph.hpp"
#include "oracles.hpp"

using namespace markoff;

namespace {

MarkoffPoint pt(u64 a, u64 b, u64 c, u64 p) { return MarkoffPoint(a, b, c, Modulus(p)); }

struct Fixture {
  u64 p, points, components, cage;
};

// Computed with a standalone Python triple-loop / union-find / matrix-order script.
constexpr Fixture kFixtures[] = {
    {5, 40, 1, 40},       {7, 28, 1, 28},       {11, 88, 1, 81},      {13, 208, 1, 178},    {17, 340, 1, 295},
    {19, 304, 1, 243},    {23, 460, 1, 373},    {29, 928, 1, 684},    {31, 868, 1, 741},    {37, 1480, 1, 1207},
    {41, 1804, 1, 1290},  {43, 1720, 1, 1375},  {47, 2068, 1, 1698},
};

}  // namespace

// =============================================================================
// Enumeration
// =============================================================================

TEST(EnumeratePoints, PThreeHasEightPoints) {
  const auto pts = enumerate_points(3);
  ASSERT_EQ(pts.size(), 8u);
  for (const auto& t : pts)
    for (u64 x : t.values()) EXPECT_NE(x, 0u);
}

TEST(EnumeratePoints, AgreesWithTripleLoopUpTo50) {
  for (u64 p : oracle::small_primes(3, 50)) {
    const auto want = oracle::cubic_points(p);
    for (Enumeration m : {Enumeration::Cubic, Enumeration::Quadratic}) {
      const auto got = enumerate_points(p, m);
      ASSERT_EQ(got.size(), want.size()) << p;
      for (std::size_t k = 0; k < got.size(); ++k) ASSERT_EQ(got[k].values(), want[k]);
    }
  }
}

TEST(EnumeratePoints, OriginAlwaysPresentAndSorted) {
  for (u64 p : oracle::small_primes(3, 100)) {
    const auto pts = enumerate_points(p);
    EXPECT_TRUE(std::binary_search(pts.begin(), pts.end(), MarkoffPoint::origin(Modulus(p))));
    EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
  }
}

TEST(EnumeratePoints, SizeFormula) {
  // |X*(p)| = p^2 + 3 (-1|p) p for p > 3.
  for (u64 p : oracle::small_primes(5, 400)) {
    const long long sign = p % 4 == 1 ? 1 : -1;
    EXPECT_EQ(static_cast<long long>(enumerate_points(p).size()),
              static_cast<long long>(p * p) + 3 * sign * static_cast<long long>(p));
  }
}

TEST(EnumeratePoints, Guards) {
  EXPECT_THROW(enumerate_points(307, Enumeration::Cubic), GuardExceeded);
  EXPECT_THROW(enumerate_points(10007), GuardExceeded);
  EXPECT_THROW(enumerate_points(2), InvalidArgument);
  EXPECT_NO_THROW(enumerate_points(307));  // Auto switches to the quadratic scan
}

// =============================================================================
// Graph structure
// =============================================================================

TEST(MarkoffGraph, FrozenStructureUpTo50) {
  for (const auto& f : kFixtures) {
    const MarkoffGraph g = build_graph(f.p);
    EXPECT_EQ(g.size(), f.points) << f.p;
    EXPECT_EQ(g.component_count(), f.components) << f.p;
    EXPECT_EQ(cage_subgraph(g).vertices.size(), f.cage) << f.p;
  }
}

TEST(MarkoffGraph, DeterministicAcrossBuilds) {
  for (u64 p : {11u, 29u}) {
    const MarkoffGraph a = build_graph(p), b = build_graph(p, Enumeration::Quadratic);
    ASSERT_EQ(a.size(), b.size());
    for (MarkoffGraph::Vertex v = 0; v < a.size(); ++v) {
      ASSERT_EQ(a.moves(v), b.moves(v));
      ASSERT_EQ(a.component(v), b.component(v));
    }
  }
}

TEST(MarkoffGraph, OriginNeighborsAndDegree) {
  const MarkoffGraph g = build_graph(7);
  const auto o = g.origin();
  const auto n = *g.index_of(rotate(MarkoffPoint::origin(Modulus(7)), 1, 1));
  EXPECT_EQ(g.component(o), g.component(n));
  for (MarkoffGraph::Vertex v = 0; v < g.size(); ++v) EXPECT_LE(g.neighbors(v).size(), 6u);
}

TEST(MarkoffGraph, EdgesAreSymmetricUpTo50) {
  for (u64 p : oracle::small_primes(3, 50)) {
    const MarkoffGraph g = build_graph(p);
    for (MarkoffGraph::Vertex v = 0; v < g.size(); ++v) {
      for (auto u : g.neighbors(v)) {
        const auto back = g.neighbors(u);
        ASSERT_TRUE(std::binary_search(back.begin(), back.end(), v));
      }
      // rot_i^{+1} then rot_i^{-1} returns
      for (int s = 0; s < MarkoffGraph::kMoves; s += 2) ASSERT_EQ(g.neighbor(g.neighbor(v, s), s + 1), v);
    }
  }
}

TEST(MarkoffGraph, VertexRoundTripsThroughKey) {
  const MarkoffGraph g = build_graph(13);
  for (MarkoffGraph::Vertex v = 0; v < g.size(); ++v) ASSERT_EQ(*g.index_of(g.vertex(v)), v);
  EXPECT_FALSE(g.index_of(MarkoffPoint::origin(Modulus(11))).has_value());
}

// =============================================================================
// Cage
// =============================================================================

TEST(Cage, OriginMembership) {
  const MarkoffGraph g7 = build_graph(7);
  EXPECT_TRUE(cage_subgraph(g7).contains(g7.origin()));
  const MarkoffGraph g11 = build_graph(11);
  EXPECT_FALSE(cage_subgraph(g11).contains(g11.origin()));
}

TEST(Cage, AgreesWithIsMaximal) {
  for (u64 p : {13u, 17u}) {
    const MarkoffGraph g = build_graph(p);
    const CageReport c = cage_subgraph(g);
    for (MarkoffGraph::Vertex v = 0; v < g.size(); ++v)
      ASSERT_EQ(c.contains(v), is_maximal(g.vertex(v)).maximal);
  }
}

TEST(Cage, MaximalVerticesShareOneComponentUpTo50) {
  for (u64 p : oracle::small_primes(5, 50)) {
    const CageReport c = cage_subgraph(build_graph(p));
    EXPECT_TRUE(c.single_component) << p;
    EXPECT_EQ(c.components_touched, 1u) << p;
  }
}

// =============================================================================
// Paths and lifts
// =============================================================================

TEST(RotationWord, NormalForm) {
  RotationWord w;
  w.append(1, 1).append(1, 1).append(2, -1).append(2, 1).append(3, 2);
  ASSERT_EQ(w.moves().size(), 2u);
  EXPECT_EQ(w.moves()[0], (RotationWord::Move{1, 2}));
  EXPECT_EQ(w.moves()[1], (RotationWord::Move{3, 2}));
  EXPECT_EQ(w.total_moves(), 4u);
  EXPECT_EQ(w.to_string(), "rot1^2 rot3^2");
  EXPECT_EQ(RotationWord().to_string(), "id");
  EXPECT_THROW(w.append(0, 1), InvalidArgument);
}

TEST(BfsPath, Examples) {
  const MarkoffGraph g = build_graph(7);
  EXPECT_TRUE(bfs_path(g, MarkoffPoint::origin(Modulus(7))).empty());
  const RotationWord w = bfs_path(g, pt(1, 1, 2, 7));
  EXPECT_EQ(w.total_moves(), 1u);
  EXPECT_EQ(w.moves().front(), (RotationWord::Move{1, 1}));
}

TEST(BfsPath, ReplaysToEveryReachableVertex) {
  const MarkoffGraph g = build_graph(11);
  const BfsTree tree(g);
  for (MarkoffGraph::Vertex v = 0; v < g.size(); ++v) {
    if (!tree.reached(v)) continue;
    const RotationWord w = tree.path_to(v);
    ASSERT_EQ(w.apply(MarkoffPoint::origin(Modulus(11))), g.vertex(v));
    ASSERT_EQ(static_cast<std::int64_t>(w.total_moves()), tree.distance(v));
  }
}

TEST(BfsPath, DistancesMatchIndependentBfs) {
  for (u64 p : {13u, 29u}) {
    const MarkoffGraph g = build_graph(p);
    const BfsTree tree(g);
    // Independent BFS over triples: forward maps from the literal formulas, inverses by table.
    const auto pts = oracle::cubic_points(p);
    std::map<oracle::Triple, std::vector<oracle::Triple>> adj;
    for (const auto& t : pts)
      for (int i = 1; i <= 3; ++i) {
        const auto u = oracle::rot(t, i, p);
        adj[t].push_back(u);
        adj[u].push_back(t);
      }
    std::map<oracle::Triple, long long> dist;
    std::queue<oracle::Triple> q;
    const oracle::Triple one{1, 1, 1};
    dist[one] = 0;
    q.push(one);
    while (!q.empty()) {
      const auto t = q.front();
      q.pop();
      for (const auto& u : adj[t])
        if (!dist.count(u)) {
          dist[u] = dist[t] + 1;
          q.push(u);
        }
    }
    for (MarkoffGraph::Vertex v = 0; v < g.size(); ++v) {
      auto it = dist.find(g.vertex(v).values());
      ASSERT_EQ(tree.reached(v), it != dist.end());
      if (it != dist.end()) {
        ASSERT_EQ(tree.distance(v), it->second);
      }
    }
  }
}

TEST(BfsPath, DisconnectedTargetThrows) {
  const MarkoffGraph g = build_graph(7);
  // Root the tree at a vertex and cut it off by asking for a point from another graph.
  EXPECT_THROW(BfsTree(g).path_to(MarkoffPoint::origin(Modulus(11))), NotOnSurface);
  // Every vertex is reachable at p = 7, so exercise Disconnected on p = 3's graph from a non-origin
  // root: rotations mod 3 act on the 8 points of {1,2}^3.
  const MarkoffGraph g3 = build_graph(3);
  const BfsTree t3(g3);
  for (MarkoffGraph::Vertex v = 0; v < g3.size(); ++v) {
    if (t3.reached(v)) {
      EXPECT_NO_THROW(t3.path_to(v));
    } else {
      EXPECT_THROW(t3.path_to(v), Disconnected);
    }
  }
}

TEST(Lift, Examples) {
  EXPECT_EQ(lift(RotationWord()), (IntegerTriple{1, 1, 1}));
  EXPECT_EQ(lift(RotationWord().append(1, 1)), (IntegerTriple{1, 1, 2}));
  const IntegerTriple t = lift(RotationWord().append(1, 2));
  EXPECT_EQ(t, (IntegerTriple{1, 2, 5}));
  EXPECT_TRUE(t.satisfies_markoff());
  EXPECT_THROW(lift(RotationWord().append(2, 11), 10), CapExceeded);
}

TEST(Lift, CommutesWithReductionForRandomWords) {
  std::mt19937_64 rng(11);
  for (u64 p : oracle::small_primes(5, 50)) {
    const Modulus m(p);
    for (int k = 0; k < 1000; ++k) {
      RotationWord w;
      const int len = static_cast<int>(rng() % 21);
      for (int s = 0; s < len; ++s) w.append(static_cast<int>(rng() % 3) + 1, (rng() % 2) ? 1 : -1);
      const IntegerTriple z = lift(w);
      ASSERT_TRUE(z.satisfies_markoff());
      ASSERT_EQ(z.reduce(m), w.apply(MarkoffPoint::origin(m)));
    }
  }
}

TEST(Lift, LargeCoordinatesAreSummarised) {
  RotationWord w;
  for (int k = 0; k < 12; ++k) w.append(k % 3 + 1, 3);
  const IntegerTriple z = lift(w);
  EXPECT_TRUE(z.satisfies_markoff());
  EXPECT_GT(z.max_digits(), 100u);
  EXPECT_NE(z.to_string(50).find("digits>"), std::string::npos);
}

// =============================================================================
// Export
// =============================================================================

TEST(Export, EdgeCsvAndComponentLines) {
  const MarkoffGraph g = build_graph(7);
  std::ostringstream edges;
  write_edge_csv(g, edges);
  std::istringstream in(edges.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x1,x2,x3,i,y1,y2,y3");
  std::size_t rows = 0;
  bool saw_origin_edge = false;
  while (std::getline(in, line)) {
    ++rows;
    saw_origin_edge |= line == "1,1,1,1,1,1,2";
  }
  EXPECT_EQ(rows, 3 * g.size());
  EXPECT_TRUE(saw_origin_edge);

  std::ostringstream comps;
  write_component_jsonl(g, cage_subgraph(g), comps);
  const auto j = nlohmann::json::parse(comps.str());
  EXPECT_EQ(j["size"], 28);
  EXPECT_EQ(j["contains_origin"], true);
  EXPECT_EQ(j["cage_vertices"], 28);
}
