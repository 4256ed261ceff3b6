#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "maxlin/core.hpp"
#include "maxlin/graph.hpp"

namespace maxlin {

/// Weighted adjacency matrix C over the max-times semiring: entry (v, u) holds
/// c_vu > 0 for u in pa(v), the diagonal is 1, everything else 0.
struct WeightMatrix {
  Matrix<double> values;

  WeightMatrix() = default;
  explicit WeightMatrix(Matrix<double> m) : values(std::move(m)) {}

  [[nodiscard]] int d() const { return static_cast<int>(values.rows()); }
  [[nodiscard]] double operator()(Vertex v, Vertex u) const {
    return values(detail::index_of(v), detail::index_of(u));
  }
  bool operator==(const WeightMatrix&) const = default;
};

/// Max-linear coefficient matrix B: b_vu is the largest path weight u ~> v,
/// b_vv = 1, zero off the ancestor relation.
struct CoefficientMatrix {
  Matrix<double> values;

  CoefficientMatrix() = default;
  explicit CoefficientMatrix(Matrix<double> m) : values(std::move(m)) {}

  [[nodiscard]] int d() const { return static_cast<int>(values.rows()); }
  [[nodiscard]] double operator()(Vertex v, Vertex u) const {
    return values(detail::index_of(v), detail::index_of(u));
  }
  bool operator==(const CoefficientMatrix&) const = default;
};

/// Directed path k_0 -> k_1 -> ... -> k_n.
struct Path {
  std::vector<Vertex> vertices;
};

/// (F (.) G)(v, u) = max_k F(v, k) * G(k, u).
[[nodiscard]] inline Matrix<double> max_times_product(const Matrix<double>& f, const Matrix<double>& g) {
  if (f.cols() != g.rows()) {
    throw DimensionMismatch("max-times product of " + std::to_string(f.rows()) + "x" +
                            std::to_string(f.cols()) + " and " + std::to_string(g.rows()) + "x" +
                            std::to_string(g.cols()));
  }
  Matrix<double> out(f.rows(), g.cols(), 0.0);
  for (std::size_t v = 0; v < f.rows(); ++v) {
    for (std::size_t k = 0; k < f.cols(); ++k) {
      const double fvk = f(v, k);
      if (fvk == 0.0) continue;
      for (std::size_t u = 0; u < g.cols(); ++u) {
        const double p = fvk * g(k, u);
        if (p > out(v, u)) out(v, u) = p;
      }
    }
  }
  return out;
}

/// Assembles C from per-edge weights: unit diagonal, c_vu at (v, u) for u -> v.
[[nodiscard]] inline WeightMatrix weight_matrix(const Dag& g, const EdgeWeights& weights) {
  const auto n = static_cast<std::size_t>(g.d());
  Matrix<double> c = Matrix<double>::identity(n);
  for (const auto& [edge, w] : weights) {
    if (!g.has_edge(edge.from, edge.to)) {
      throw ExtraneousWeight("weight given for non-edge " + std::to_string(edge.from) + "->" +
                             std::to_string(edge.to));
    }
  }
  for (const Edge& e : g.edges()) {
    auto it = weights.find(e);
    if (it == weights.end()) {
      throw MissingEdgeWeight("no weight for edge " + std::to_string(e.from) + "->" + std::to_string(e.to));
    }
    if (!(it->second > 0.0) || !std::isfinite(it->second)) {
      throw NonPositiveWeight("edge " + std::to_string(e.from) + "->" + std::to_string(e.to) +
                              " has non-positive weight");
    }
    c(detail::index_of(e.to), detail::index_of(e.from)) = it->second;
  }
  return WeightMatrix(std::move(c));
}

/// B = C^(d-1) under (.), by repeated squaring. Because the diagonal of C is 1
/// the powers are increasing and stabilise once every path length is covered.
[[nodiscard]] inline CoefficientMatrix closure(const WeightMatrix& c) {
  const Matrix<double>& m = c.values;
  if (!m.square()) throw InvalidWeightMatrix("weight matrix is not square");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m(i, i) != 1.0) {
      throw InvalidWeightMatrix("diagonal entry " + std::to_string(i + 1) + " is not 1");
    }
  }
  for (double x : m.data()) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidWeightMatrix("negative or non-finite weight");
  }
  Matrix<double> b = m;
  const std::size_t target = m.rows() > 1 ? m.rows() - 1 : 1;
  for (std::size_t power = 1; power < target; power *= 2) b = max_times_product(b, b);
  return CoefficientMatrix(std::move(b));
}

/// Product of edge weights along p; 1 for a single-vertex path.
[[nodiscard]] inline double path_weight(const WeightMatrix& c, const Path& p) {
  if (p.vertices.empty()) throw NotAPath("empty path");
  std::vector<char> seen(static_cast<std::size_t>(c.d()) + 1, 0);
  double w = 1.0;
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    const Vertex v = p.vertices[i];
    detail::check_vertex(v, c.d());
    if (seen[static_cast<std::size_t>(v)]) throw NotAPath("vertex " + std::to_string(v) + " repeated");
    seen[static_cast<std::size_t>(v)] = 1;
    if (i == 0) continue;
    const Vertex u = p.vertices[i - 1];
    const double cvu = c(v, u);
    if (cvu <= 0.0) {
      throw NotAPath(std::to_string(u) + "->" + std::to_string(v) + " is not an edge");
    }
    w *= cvu;
  }
  return w;
}

/// Test oracle: b_vu as the maximum of path_weight over every directed path
/// u ~> v, found by exhaustive depth-first enumeration.
[[nodiscard]] inline CoefficientMatrix brute_force_B(const Dag& g, const WeightMatrix& c,
                                                     std::size_t path_limit = 1'000'000) {
  if (c.d() != g.d()) throw DimensionMismatch("weight matrix and DAG differ in dimension");
  const auto n = static_cast<std::size_t>(g.d());
  Matrix<double> b(n, n, 0.0);
  std::size_t paths = 0;
  // Walks forward from `source`, tracking the product along the current path.
  // Paths in a DAG are automatically simple.
  auto walk = [&](auto&& self, Vertex source, Vertex at, double weight) -> void {
    if (++paths > path_limit) throw PathLimitExceeded("more than " + std::to_string(path_limit) + " paths");
    double& best = b(detail::index_of(at), detail::index_of(source));
    if (weight > best) best = weight;
    for (Vertex next : g.children(at)) self(self, source, next, weight * c(next, at));
  };
  for (Vertex u = 1; u <= g.d(); ++u) walk(walk, u, u, 1.0);
  return CoefficientMatrix(std::move(b));
}

}  // namespace maxlin
