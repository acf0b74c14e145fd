#pragma once

// The Markoff mod-p graph on X*(p) with edges t -- rot_i(t).

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <queue>
#include <vector>

#include <nlohmann/json.hpp>

#include "markoff/rotation.hpp"
#include "markoff/theorem.hpp"
#include "markoff/word.hpp"

namespace markoff {

inline constexpr u64 kCubicGuard = 300;
inline constexpr u64 kQuadraticGuard = 10'000;

enum class Enumeration { Auto, Cubic, Quadratic };

/// X*(p) in lexicographic order.
inline std::vector<MarkoffPoint> enumerate_points(u64 prime, Enumeration method = Enumeration::Auto, bool force = false) {
  const Modulus p(prime);
  if (method == Enumeration::Auto) method = prime <= kCubicGuard ? Enumeration::Cubic : Enumeration::Quadratic;
  const u64 guard = method == Enumeration::Cubic ? kCubicGuard : kQuadraticGuard;
  if (!force && prime > guard)
    throw GuardExceeded("enumeration limited to p <= " + std::to_string(guard) + " (use force)");

  std::vector<MarkoffPoint> out;
  if (method == Enumeration::Quadratic) {
    for_each_point(p, [&](const MarkoffPoint& t) { out.push_back(t); });
    return out;
  }
  const u64 three = 3 % prime;
  for (u64 a = 0; a < prime; ++a)
    for (u64 b = 0; b < prime; ++b)
      for (u64 c = 0; c < prime; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        const u64 lhs = add_mod(add_mod(mul_mod(a, a, prime), mul_mod(b, b, prime), prime), mul_mod(c, c, prime), prime);
        if (lhs == mul_mod(three, mul_mod(a, mul_mod(b, c, prime), prime), prime))
          out.push_back(detail_make_point(prime, {a, b, c}));
      }
  return out;
}

/// Move slot s in [0, 6) is rot_{s/2+1}^{+1} for even s and ^{-1} for odd s.
inline constexpr int move_generator(int slot) { return slot / 2 + 1; }
inline constexpr long long move_exponent(int slot) { return slot % 2 == 0 ? 1 : -1; }

class MarkoffGraph {
 public:
  using Vertex = std::uint32_t;
  static constexpr int kMoves = 6;

  explicit MarkoffGraph(u64 prime, Enumeration method = Enumeration::Auto, bool force = false) : p_(prime) {
    const std::vector<MarkoffPoint> points = enumerate_points(prime, method, force);
    keys_.reserve(points.size());
    for (const auto& t : points) keys_.push_back(t.key());

    adjacency_.resize(keys_.size());
    for (Vertex v = 0; v < keys_.size(); ++v) {
      for (int s = 0; s < kMoves; ++s) {
        const MarkoffPoint n = rotate(points[v], move_generator(s), move_exponent(s));
        auto id = index_of(n);
        if (!id) throw InvariantViolation("rotation left X*(p)");
        adjacency_[v][s] = *id;
      }
    }
    label_components();
  }

  u64 prime() const { return p_; }
  std::size_t size() const { return keys_.size(); }

  MarkoffPoint vertex(Vertex v) const {
    const u64 k = keys_.at(v);
    return detail_make_point(p_, {k / (p_ * p_), (k / p_) % p_, k % p_});
  }

  std::optional<Vertex> index_of(const MarkoffPoint& t) const {
    if (t.modulus() != p_) return std::nullopt;
    const u64 k = t.key();
    auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
    if (it == keys_.end() || *it != k) return std::nullopt;
    return static_cast<Vertex>(it - keys_.begin());
  }

  Vertex origin() const { return *index_of(MarkoffPoint::origin(Modulus(p_))); }

  /// Neighbor via move slot s (see move_generator / move_exponent).
  Vertex neighbor(Vertex v, int slot) const { return adjacency_[v][slot]; }
  const std::array<Vertex, kMoves>& moves(Vertex v) const { return adjacency_[v]; }

  /// Distinct neighbors, excluding v itself.
  std::vector<Vertex> neighbors(Vertex v) const {
    std::vector<Vertex> out;
    for (Vertex n : adjacency_[v])
      if (n != v && std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Component ids are numbered in order of their smallest vertex.
  std::uint32_t component(Vertex v) const { return component_[v]; }
  std::size_t component_count() const { return component_sizes_.size(); }
  const std::vector<std::size_t>& component_sizes() const { return component_sizes_; }

 private:
  void label_components() {
    std::vector<Vertex> parent(keys_.size());
    std::iota(parent.begin(), parent.end(), Vertex{0});
    std::function<Vertex(Vertex)> find = [&](Vertex v) {
      while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
      }
      return v;
    };
    for (Vertex v = 0; v < keys_.size(); ++v)
      for (Vertex n : adjacency_[v]) {
        Vertex a = find(v), b = find(n);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    constexpr std::uint32_t kUnset = ~std::uint32_t{0};
    std::vector<std::uint32_t> id_of_root(keys_.size(), kUnset);
    component_.resize(keys_.size());
    for (Vertex v = 0; v < keys_.size(); ++v) {
      const Vertex r = find(v);
      if (id_of_root[r] == kUnset) {
        id_of_root[r] = static_cast<std::uint32_t>(component_sizes_.size());
        component_sizes_.push_back(0);
      }
      component_[v] = id_of_root[r];
      ++component_sizes_[component_[v]];
    }
  }

  u64 p_;
  std::vector<u64> keys_;
  std::vector<std::array<Vertex, kMoves>> adjacency_;
  std::vector<std::uint32_t> component_;
  std::vector<std::size_t> component_sizes_;
};

inline MarkoffGraph build_graph(u64 prime, Enumeration method = Enumeration::Auto, bool force = false) {
  return MarkoffGraph(prime, method, force);
}

struct CageReport {
  std::vector<MarkoffGraph::Vertex> vertices;  // maximal points, ascending
  std::size_t components_touched = 0;
  bool single_component = true;  // all maximal vertices in one component of G_p

  bool contains(MarkoffGraph::Vertex v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }
};

/// Per-residue maximality flags for the coordinates of X*(p).
inline std::vector<char> maximal_residues(u64 prime, FactorCache& cache = default_factor_cache()) {
  const Modulus p(prime);
  const CoordinateTable table = coordinate_table(p, cache);
  std::vector<char> out(prime);
  for (u64 v = 0; v < prime; ++v) out[v] = table.order[v] == maximal_order(table.kind[v], prime);
  return out;
}

inline CageReport cage_subgraph(const MarkoffGraph& g, FactorCache& cache = default_factor_cache()) {
  const std::vector<char> maximal = maximal_residues(g.prime(), cache);
  CageReport report;
  std::vector<char> seen(g.component_count(), 0);
  for (MarkoffGraph::Vertex v = 0; v < g.size(); ++v) {
    const auto x = g.vertex(v).values();
    if (!(maximal[x[0]] || maximal[x[1]] || maximal[x[2]])) continue;
    report.vertices.push_back(v);
    if (!seen[g.component(v)]) {
      seen[g.component(v)] = 1;
      ++report.components_touched;
    }
  }
  report.single_component = report.components_touched <= 1;
  return report;
}

/// Breadth-first tree rooted at a vertex. Ties break by move slot order:
/// generator 1, 2, 3 and +1 before -1.
class BfsTree {
 public:
  static constexpr std::int64_t kUnreached = -1;

  BfsTree(const MarkoffGraph& g, MarkoffGraph::Vertex root) : graph_(&g), root_(root) {
    dist_.assign(g.size(), kUnreached);
    parent_.assign(g.size(), root);
    slot_.assign(g.size(), 0);
    std::queue<MarkoffGraph::Vertex> queue;
    dist_[root] = 0;
    queue.push(root);
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop();
      for (int s = 0; s < MarkoffGraph::kMoves; ++s) {
        const auto n = g.neighbor(v, s);
        if (dist_[n] != kUnreached) continue;
        dist_[n] = dist_[v] + 1;
        parent_[n] = v;
        slot_[n] = static_cast<std::uint8_t>(s);
        queue.push(n);
      }
    }
  }

  explicit BfsTree(const MarkoffGraph& g) : BfsTree(g, g.origin()) {}

  MarkoffGraph::Vertex root() const { return root_; }
  std::int64_t distance(MarkoffGraph::Vertex v) const { return dist_.at(v); }
  bool reached(MarkoffGraph::Vertex v) const { return dist_.at(v) != kUnreached; }

  RotationWord path_to(MarkoffGraph::Vertex target) const {
    if (!reached(target))
      throw Disconnected("target is not connected to the BFS root");
    std::vector<int> slots;
    for (auto v = target; v != root_; v = parent_[v]) slots.push_back(slot_[v]);
    RotationWord w;
    for (auto it = slots.rbegin(); it != slots.rend(); ++it) w.append(move_generator(*it), move_exponent(*it));
    return w;
  }

  RotationWord path_to(const MarkoffPoint& target) const {
    auto v = graph_->index_of(target);
    if (!v) throw NotOnSurface("target is not a vertex of this graph");
    return path_to(*v);
  }

 private:
  const MarkoffGraph* graph_;
  MarkoffGraph::Vertex root_;
  std::vector<std::int64_t> dist_;
  std::vector<MarkoffGraph::Vertex> parent_;
  std::vector<std::uint8_t> slot_;
};

/// Shortest rotation word taking (1,1,1) to target.
inline RotationWord bfs_path(const MarkoffGraph& g, const MarkoffPoint& target) { return BfsTree(g).path_to(target); }

/// Edge list, one row per (vertex, forward rotation): x1,x2,x3,i,y1,y2,y3.
inline void write_edge_csv(const MarkoffGraph& g, std::ostream& os) {
  os << "x1,x2,x3,i,y1,y2,y3\n";
  for (MarkoffGraph::Vertex v = 0; v < g.size(); ++v) {
    const auto x = g.vertex(v).values();
    for (int i = 1; i <= 3; ++i) {
      const auto y = g.vertex(g.neighbor(v, 2 * (i - 1))).values();
      os << x[0] << ',' << x[1] << ',' << x[2] << ',' << i << ',' << y[0] << ',' << y[1] << ',' << y[2] << '\n';
    }
  }
}

/// One JSON object per component: id, size, whether it holds (1,1,1), cage vertex count.
inline void write_component_jsonl(const MarkoffGraph& g, const CageReport& cage, std::ostream& os) {
  std::vector<std::size_t> cage_count(g.component_count(), 0);
  for (auto v : cage.vertices) ++cage_count[g.component(v)];
  const auto origin_component = g.component(g.origin());
  for (std::size_t c = 0; c < g.component_count(); ++c) {
    nlohmann::json row = {{"p", g.prime()},
                          {"component", c},
                          {"size", g.component_sizes()[c]},
                          {"contains_origin", c == origin_component},
                          {"cage_vertices", cage_count[c]}};
    os << row.dump() << '\n';
  }
}

}  // namespace markoff
