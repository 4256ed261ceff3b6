#pragma once

#include <cstdint>
#include <numeric>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "maxlin/core.hpp"

namespace maxlin {

/// Simple undirected graph on vertices 1..d. Adjacency is symmetric and
/// irreflexive.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  explicit UndirectedGraph(int d) : d_(d), adj_(static_cast<std::size_t>(d), static_cast<std::size_t>(d), 0) {}

  [[nodiscard]] int d() const { return d_; }

  void add_edge(Vertex u, Vertex v) {
    detail::check_vertex(u, d_);
    detail::check_vertex(v, d_);
    if (u == v) return;
    adj_(detail::index_of(u), detail::index_of(v)) = 1;
    adj_(detail::index_of(v), detail::index_of(u)) = 1;
  }

  [[nodiscard]] bool adjacent(Vertex u, Vertex v) const {
    return adj_(detail::index_of(u), detail::index_of(v)) != 0;
  }

  [[nodiscard]] std::vector<Vertex> neighbors(Vertex v) const {
    std::vector<Vertex> out;
    for (Vertex u = 1; u <= d_; ++u) {
      if (adjacent(v, u)) out.push_back(u);
    }
    return out;
  }

  /// Edges as pairs (u, v) with u < v, sorted.
  [[nodiscard]] std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 1; u <= d_; ++u) {
      for (Vertex v = u + 1; v <= d_; ++v) {
        if (adjacent(u, v)) out.emplace_back(u, v);
      }
    }
    return out;
  }

  /// True iff every path from A to B meets S.
  [[nodiscard]] bool separates(const VertexSet& a, const VertexSet& b, const VertexSet& s) const {
    std::vector<char> blocked(static_cast<std::size_t>(d_) + 1, 0);
    std::vector<char> target(static_cast<std::size_t>(d_) + 1, 0);
    std::vector<char> seen(static_cast<std::size_t>(d_) + 1, 0);
    for (Vertex v : s) blocked[static_cast<std::size_t>(v)] = 1;
    for (Vertex v : b) target[static_cast<std::size_t>(v)] = 1;
    std::queue<Vertex> todo;
    for (Vertex v : a) {
      if (blocked[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = 1;
      todo.push(v);
    }
    while (!todo.empty()) {
      const Vertex v = todo.front();
      todo.pop();
      if (target[static_cast<std::size_t>(v)]) return false;
      for (Vertex u = 1; u <= d_; ++u) {
        const auto ui = static_cast<std::size_t>(u);
        if (!adjacent(v, u) || seen[ui] || blocked[ui]) continue;
        seen[ui] = 1;
        todo.push(u);
      }
    }
    return true;
  }

  bool operator==(const UndirectedGraph&) const = default;

 private:
  int d_ = 0;
  Matrix<std::uint8_t> adj_;
};

/// Directed acyclic graph on vertices 1..d.
///
/// Labels are kept as given. A topological order (Kahn, ties broken by the
/// smallest label) and the reflexive-transitive reachability relation are
/// computed on construction; the object is immutable afterwards.
class Dag {
 public:
  Dag() : Dag(1, {}) {}

  Dag(int d, std::vector<Edge> edges, std::vector<std::string> names = {})
      : d_(d), edges_(std::move(edges)), names_(std::move(names)) {
    if (d_ < 1) throw VertexOutOfRange("vertex count must be positive");
    if (!names_.empty() && names_.size() != static_cast<std::size_t>(d_)) {
      throw DimensionMismatch("name table has " + std::to_string(names_.size()) + " entries for " +
                              std::to_string(d_) + " vertices");
    }
    const auto n = static_cast<std::size_t>(d_);
    parents_.assign(n, {});
    children_.assign(n, {});
    for (const Edge& e : edges_) {
      detail::check_vertex(e.from, d_);
      detail::check_vertex(e.to, d_);
      if (e.from == e.to) {
        throw CycleError("self-loop at vertex " + std::to_string(e.from));
      }
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
      throw DuplicateEdgeError("duplicate edge " + std::to_string(dup->from) + "->" +
                               std::to_string(dup->to));
    }
    for (const Edge& e : edges_) {
      parents_[detail::index_of(e.to)].push_back(e.from);
      children_[detail::index_of(e.from)].push_back(e.to);
    }
    for (auto& p : parents_) std::sort(p.begin(), p.end());
    for (auto& c : children_) std::sort(c.begin(), c.end());
    compute_order();
    compute_reach();
  }

  [[nodiscard]] int d() const { return d_; }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }

  [[nodiscard]] const std::vector<Vertex>& parents(Vertex v) const {
    return parents_[detail::index_of(v)];
  }
  [[nodiscard]] const std::vector<Vertex>& children(Vertex v) const {
    return children_[detail::index_of(v)];
  }

  [[nodiscard]] bool has_edge(Vertex from, Vertex to) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to});
  }
  [[nodiscard]] bool adjacent(Vertex u, Vertex v) const { return has_edge(u, v) || has_edge(v, u); }

  /// Topological order of the vertices.
  [[nodiscard]] const std::vector<Vertex>& well_order() const { return well_order_; }
  /// Position of v in well_order(), zero-based.
  [[nodiscard]] std::size_t position(Vertex v) const { return position_[detail::index_of(v)]; }

  /// R(v-1, u-1) = 1 iff u = v or there is a directed path u ~> v.
  [[nodiscard]] const Matrix<std::uint8_t>& reach() const { return reach_; }

  /// True iff `from` = `to` or a directed path from ~> to exists.
  [[nodiscard]] bool reachable(Vertex from, Vertex to) const {
    return reach_(detail::index_of(to), detail::index_of(from)) != 0;
  }

  /// an(v): strict ancestors.
  [[nodiscard]] VertexSet ancestors(Vertex v) const {
    VertexSet out;
    for (Vertex u = 1; u <= d_; ++u) {
      if (u != v && reachable(u, v)) out.insert(u);
    }
    return out;
  }

  /// de(v): strict descendants.
  [[nodiscard]] VertexSet descendants(Vertex v) const {
    VertexSet out;
    for (Vertex u = 1; u <= d_; ++u) {
      if (u != v && reachable(v, u)) out.insert(u);
    }
    return out;
  }

  bool operator==(const Dag& other) const { return d_ == other.d_ && edges_ == other.edges_; }

 private:
  void compute_order() {
    const auto n = static_cast<std::size_t>(d_);
    std::vector<std::size_t> indegree(n);
    for (std::size_t i = 0; i < n; ++i) indegree[i] = parents_[i].size();
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
    for (Vertex v = 1; v <= d_; ++v) {
      if (indegree[detail::index_of(v)] == 0) ready.push(v);
    }
    well_order_.clear();
    while (!ready.empty()) {
      const Vertex v = ready.top();
      ready.pop();
      well_order_.push_back(v);
      for (Vertex c : children(v)) {
        if (--indegree[detail::index_of(c)] == 0) ready.push(c);
      }
    }
    if (well_order_.size() != n) throw CycleError("edges contain a directed cycle");
    position_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) position_[detail::index_of(well_order_[i])] = i;
  }

  void compute_reach() {
    const auto n = static_cast<std::size_t>(d_);
    reach_ = Matrix<std::uint8_t>(n, n, 0);
    for (Vertex v : well_order_) {
      const std::size_t vi = detail::index_of(v);
      reach_(vi, vi) = 1;
      for (Vertex p : parents(v)) {
        const std::size_t pi = detail::index_of(p);
        for (std::size_t u = 0; u < n; ++u) reach_(vi, u) |= reach_(pi, u);
      }
    }
  }

  int d_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::string> names_;
  std::vector<std::vector<Vertex>> parents_;
  std::vector<std::vector<Vertex>> children_;
  std::vector<Vertex> well_order_;
  std::vector<std::size_t> position_;
  Matrix<std::uint8_t> reach_;
};

/// Unshielded collider left -> mid <- right with left < right non-adjacent.
struct ColliderTriple {
  Vertex left = 0;
  Vertex mid = 0;
  Vertex right = 0;
  auto operator<=>(const ColliderTriple&) const = default;
};

[[nodiscard]] inline Dag build_dag(int d, std::vector<Edge> edges, std::vector<std::string> names = {}) {
  return Dag(d, std::move(edges), std::move(names));
}

/// An(A): A together with all ancestors of its members.
[[nodiscard]] inline VertexSet ancestral_closure(const Dag& g, const VertexSet& a) {
  detail::check_vertices(a, g.d());
  VertexSet out;
  for (Vertex u = 1; u <= g.d(); ++u) {
    for (Vertex v : a) {
      if (g.reachable(u, v)) {
        out.insert(u);
        break;
      }
    }
  }
  return out;
}

/// Moral graph of the sub-DAG induced by `within`. Passing every vertex gives
/// the usual moral graph; vertices outside `within` end up isolated.
[[nodiscard]] inline UndirectedGraph moral_graph(const Dag& g, const VertexSet& within) {
  detail::check_vertices(within, g.d());
  UndirectedGraph m(g.d());
  for (Vertex w : within) {
    const auto& pa = g.parents(w);
    std::vector<Vertex> kept;
    for (Vertex p : pa) {
      if (within.count(p)) kept.push_back(p);
    }
    for (std::size_t i = 0; i < kept.size(); ++i) {
      m.add_edge(kept[i], w);
      for (std::size_t j = i + 1; j < kept.size(); ++j) m.add_edge(kept[i], kept[j]);
    }
  }
  return m;
}

[[nodiscard]] inline UndirectedGraph moral_graph(const Dag& g) {
  VertexSet all;
  for (Vertex v = 1; v <= g.d(); ++v) all.insert(v);
  return moral_graph(g, all);
}

[[nodiscard]] inline UndirectedGraph skeleton(const Dag& g) {
  UndirectedGraph s(g.d());
  for (const Edge& e : g.edges()) s.add_edge(e.from, e.to);
  return s;
}

[[nodiscard]] inline std::set<ColliderTriple> unshielded_colliders(const Dag& g) {
  std::set<ColliderTriple> out;
  for (Vertex w = 1; w <= g.d(); ++w) {
    const auto& pa = g.parents(w);
    for (std::size_t i = 0; i < pa.size(); ++i) {
      for (std::size_t j = i + 1; j < pa.size(); ++j) {
        if (!g.adjacent(pa[i], pa[j])) out.insert({pa[i], w, pa[j]});
      }
    }
  }
  return out;
}

/// Same skeleton and same unshielded colliders.
[[nodiscard]] inline bool markov_equivalent(const Dag& g1, const Dag& g2) {
  if (g1.d() != g2.d()) throw DimensionMismatch("DAGs have different vertex counts");
  return skeleton(g1) == skeleton(g2) && unshielded_colliders(g1) == unshielded_colliders(g2);
}

/// True iff the skeleton is a forest.
[[nodiscard]] inline bool is_polytree(const Dag& g) {
  std::vector<Vertex> root(static_cast<std::size_t>(g.d()) + 1);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](Vertex v) {
    while (root[static_cast<std::size_t>(v)] != v) {
      root[static_cast<std::size_t>(v)] = root[static_cast<std::size_t>(root[static_cast<std::size_t>(v)])];
      v = root[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (const Edge& e : g.edges()) {
    // A DAG has no 2-cycles, so every directed edge is a distinct skeleton edge.
    const Vertex a = find(e.from);
    const Vertex b = find(e.to);
    if (a == b) return false;
    root[static_cast<std::size_t>(a)] = b;
  }
  return true;
}

}  // namespace maxlin
