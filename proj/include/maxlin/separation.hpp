#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <queue>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "maxlin/core.hpp"
#include "maxlin/graph.hpp"

namespace maxlin {

/// Is A separated from B given S? A and B nonempty, all three disjoint.
struct SeparationQuery {
  VertexSet a;
  VertexSet b;
  VertexSet s;

  void validate(int d) const {
    detail::check_vertices(a, d);
    detail::check_vertices(b, d);
    detail::check_vertices(s, d);
    if (a.empty() || b.empty()) throw EmptyVertexSet("query sides must be nonempty");
    auto overlaps = [](const VertexSet& x, const VertexSet& y) {
      return std::any_of(x.begin(), x.end(), [&](Vertex v) { return y.count(v) != 0; });
    };
    if (overlaps(a, b) || overlaps(a, s) || overlaps(b, s)) {
      throw NonDisjointQuery("query sets must be pairwise disjoint");
    }
  }
};

/// A _||_ B | S together with a verdict.
struct IndependenceStatement {
  VertexSet a;
  VertexSet b;
  VertexSet s;
  bool holds = true;

  auto operator<=>(const IndependenceStatement&) const = default;
};

/// Path-blocking d-separation, evaluated as a breadth-first search over
/// (vertex, direction of arrival) states. Arriving "up" means we came from a
/// child, arriving "down" means we came from a parent.
[[nodiscard]] inline bool d_separated(const Dag& g, const SeparationQuery& q) {
  q.validate(g.d());
  const auto n = static_cast<std::size_t>(g.d()) + 1;
  std::vector<char> in_s(n, 0);
  std::vector<char> in_b(n, 0);
  std::vector<char> in_an_s(n, 0);
  for (Vertex v : q.s) in_s[static_cast<std::size_t>(v)] = 1;
  for (Vertex v : q.b) in_b[static_cast<std::size_t>(v)] = 1;
  for (Vertex v : ancestral_closure(g, q.s)) in_an_s[static_cast<std::size_t>(v)] = 1;

  enum Dir : std::uint8_t { kUp = 0, kDown = 1 };
  std::vector<std::array<char, 2>> seen(n, {0, 0});
  std::queue<std::pair<Vertex, Dir>> todo;
  for (Vertex a : q.a) {
    seen[static_cast<std::size_t>(a)][kUp] = 1;
    todo.emplace(a, kUp);
  }
  auto visit = [&](Vertex v, Dir dir) {
    auto& flag = seen[static_cast<std::size_t>(v)][dir];
    if (!flag) {
      flag = 1;
      todo.emplace(v, dir);
    }
  };
  while (!todo.empty()) {
    const auto [v, dir] = todo.front();
    todo.pop();
    const auto vi = static_cast<std::size_t>(v);
    if (in_b[vi]) return false;
    if (dir == kUp) {
      // Non-collider: passes unless observed.
      if (in_s[vi]) continue;
      for (Vertex p : g.parents(v)) visit(p, kUp);
      for (Vertex c : g.children(v)) visit(c, kDown);
    } else {
      if (!in_s[vi]) {
        for (Vertex c : g.children(v)) visit(c, kDown);
      }
      // Collider: passes iff v is in An(S).
      if (in_an_s[vi]) {
        for (Vertex p : g.parents(v)) visit(p, kUp);
      }
    }
  }
  return true;
}

/// Separation of A from B by S in the moral graph of D restricted to
/// An(A u B u S).
[[nodiscard]] inline bool m_separated(const Dag& g, const SeparationQuery& q) {
  q.validate(g.d());
  VertexSet all = q.a;
  all.insert(q.b.begin(), q.b.end());
  all.insert(q.s.begin(), q.s.end());
  return moral_graph(g, ancestral_closure(g, all)).separates(q.a, q.b, q.s);
}

enum class MarkovKind { ordered, local };

/// Statements of the well-ordered (v _||_ pr(v) \ pa(v) | pa(v)) or local
/// (v _||_ nd(v) \ pa(v) | pa(v)) Markov property. Vacuous ones are omitted.
[[nodiscard]] inline std::vector<IndependenceStatement> markov_statements(const Dag& g, MarkovKind kind) {
  std::vector<IndependenceStatement> out;
  for (std::size_t pos = 0; pos < g.well_order().size(); ++pos) {
    const Vertex v = g.well_order()[pos];
    const VertexSet pa(g.parents(v).begin(), g.parents(v).end());
    VertexSet rest;
    if (kind == MarkovKind::ordered) {
      for (std::size_t i = 0; i < pos; ++i) rest.insert(g.well_order()[i]);
    } else {
      const VertexSet de = g.descendants(v);
      for (Vertex u = 1; u <= g.d(); ++u) {
        if (u != v && !de.count(u)) rest.insert(u);
      }
    }
    for (Vertex p : pa) rest.erase(p);
    if (rest.empty()) continue;
    out.push_back({{v}, std::move(rest), pa, true});
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// In floating point: only used to compare against a size limit.
inline double binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace detail

/// Every ({a}, {b}, S) with a < b, a, b not in S and |S| <= max_cond, with its
/// d-separation verdict. Sorted by (a, b, S).
[[nodiscard]] inline std::vector<IndependenceStatement> enumerate_independences(
    const Dag& g, int max_cond, std::uint64_t limit = 1'000'000) {
  const auto d = static_cast<std::uint64_t>(g.d());
  if (d < 2) return {};
  const std::uint64_t others = d - 2;
  const std::uint64_t kmax = std::min<std::uint64_t>(static_cast<std::uint64_t>(std::max(max_cond, 0)), others);
  double per_pair = 0.0;
  for (std::uint64_t k = 0; k <= kmax; ++k) per_pair += detail::binomial(others, k);
  const double total = std::round(per_pair * static_cast<double>(d * (d - 1) / 2));
  if (total > static_cast<double>(limit)) {
    throw SizeLimitExceeded(std::to_string(static_cast<long double>(total)) + " statements exceed the limit of " +
                            std::to_string(limit));
  }
  std::vector<IndependenceStatement> out;
  out.reserve(static_cast<std::size_t>(total));
  for (Vertex a = 1; a <= g.d(); ++a) {
    for (Vertex b = a + 1; b <= g.d(); ++b) {
      std::vector<Vertex> pool;
      for (Vertex v = 1; v <= g.d(); ++v) {
        if (v != a && v != b) pool.push_back(v);
      }
      // Conditioning sets by increasing size, each in lexicographic order.
      std::vector<Vertex> chosen;
      auto extend = [&](auto&& self, std::size_t from, std::uint64_t size) -> void {
        if (chosen.size() == size) {
          SeparationQuery q{{a}, {b}, VertexSet(chosen.begin(), chosen.end())};
          const bool holds = d_separated(g, q);
          out.push_back({std::move(q.a), std::move(q.b), std::move(q.s), holds});
          return;
        }
        for (std::size_t i = from; i < pool.size(); ++i) {
          chosen.push_back(pool[i]);
          self(self, i + 1, size);
          chosen.pop_back();
        }
      };
      for (std::uint64_t k = 0; k <= kmax; ++k) extend(extend, 0, k);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace maxlin
