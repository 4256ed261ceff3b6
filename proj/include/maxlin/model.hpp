#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <utility>

#include "maxlin/core.hpp"
#include "maxlin/graph.hpp"
#include "maxlin/tropical.hpp"

namespace maxlin {

/// Recursive max-linear model X_v = max(max_{u in pa(v)} c_vu X_u, Z_v) on a
/// DAG, with its coefficient matrix cached.
class MaxLinearModel {
 public:
  MaxLinearModel(Dag g, EdgeWeights weights)
      : g_(std::move(g)), weights_(std::move(weights)), c_(weight_matrix(g_, weights_)), b_(closure(c_)) {}

  [[nodiscard]] const Dag& dag() const { return g_; }
  [[nodiscard]] const EdgeWeights& weights() const { return weights_; }
  [[nodiscard]] const WeightMatrix& C() const { return c_; }
  [[nodiscard]] const CoefficientMatrix& B() const { return b_; }
  [[nodiscard]] int d() const { return g_.d(); }

 private:
  Dag g_;
  EdgeWeights weights_;
  WeightMatrix c_;
  CoefficientMatrix b_;
};

[[nodiscard]] inline MaxLinearModel new_model(Dag g, EdgeWeights weights) {
  return MaxLinearModel(std::move(g), std::move(weights));
}

enum class NoiseFamily { frechet, lognormal };

/// Law of the i.i.d. innovations Z_v plus the seed of the sampler.
/// Fréchet: P(Z <= x) = exp(-x^-alpha). Log-normal: log Z ~ N(mu, sigma^2).
struct NoiseSpec {
  NoiseFamily family = NoiseFamily::frechet;
  double alpha = 1.0;
  double mu = 0.0;
  double sigma = 1.0;
  std::uint64_t seed = 0;

  static NoiseSpec frechet(double alpha, std::uint64_t seed) {
    NoiseSpec s{NoiseFamily::frechet, alpha, 0.0, 1.0, seed};
    s.validate();
    return s;
  }
  static NoiseSpec lognormal(double mu, double sigma, std::uint64_t seed) {
    NoiseSpec s{NoiseFamily::lognormal, 1.0, mu, sigma, seed};
    s.validate();
    return s;
  }

  void validate() const {
    if (family == NoiseFamily::frechet && !(alpha > 0.0 && std::isfinite(alpha))) {
      throw InvalidNoiseSpec("Frechet shape must be positive");
    }
    if (family == NoiseFamily::lognormal && !(sigma > 0.0 && std::isfinite(sigma) && std::isfinite(mu))) {
      throw InvalidNoiseSpec("log-normal sigma must be positive");
    }
  }
};

/// n x d observations; row = observation, column v-1 = vertex v. Entries are
/// strictly positive. An empty (n = 0) sample is representable so estimators
/// can report it.
class SampleMatrix {
 public:
  SampleMatrix() = default;
  explicit SampleMatrix(Matrix<double> values) : values_(std::move(values)) {
    for (double x : values_.data()) {
      if (!(x > 0.0) || !std::isfinite(x)) throw NonPositiveSample("sample entries must be positive and finite");
    }
  }

  [[nodiscard]] std::size_t n() const { return values_.rows(); }
  [[nodiscard]] int d() const { return static_cast<int>(values_.cols()); }
  /// Observation `obs` (zero-based) at vertex v (one-based).
  [[nodiscard]] double x(std::size_t obs, Vertex v) const { return values_(obs, detail::index_of(v)); }
  [[nodiscard]] const Matrix<double>& values() const { return values_; }

  bool operator==(const SampleMatrix&) const = default;

 private:
  Matrix<double> values_;
};

namespace detail {

/// Substream for observation `obs`: a function of (seed, obs) only.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t obs) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(obs), static_cast<std::uint32_t>(obs >> 32)};
  return std::mt19937_64(seq);
}

/// Uniform on the open interval (0, 1) with 53 random bits.
inline double open_uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline double draw(const NoiseSpec& spec, std::mt19937_64& rng) {
  switch (spec.family) {
    case NoiseFamily::frechet:
      return std::pow(-std::log(open_uniform(rng)), -1.0 / spec.alpha);
    case NoiseFamily::lognormal: {
      const double r = std::sqrt(-2.0 * std::log(open_uniform(rng)));
      const double z = r * std::cos(2.0 * std::numbers::pi * open_uniform(rng));
      return std::exp(spec.mu + spec.sigma * z);
    }
  }
  throw InvalidNoiseSpec("unknown noise family");
}

}  // namespace detail

/// n x d matrix of independent innovations drawn per `spec`.
[[nodiscard]] inline Matrix<double> draw_noise(const NoiseSpec& spec, std::size_t n, int d) {
  spec.validate();
  Matrix<double> z(n, static_cast<std::size_t>(d));
  for (std::size_t obs = 0; obs < n; ++obs) {
    auto rng = detail::substream(spec.seed, obs);
    for (std::size_t v = 0; v < z.cols(); ++v) z(obs, v) = detail::draw(spec, rng);
  }
  return z;
}

/// Rows X = B (.) Z for the given innovation rows. Also the hook for feeding
/// degenerate noise (for example all ones) in tests.
[[nodiscard]] inline SampleMatrix propagate(const MaxLinearModel& m, const Matrix<double>& noise) {
  const auto d = static_cast<std::size_t>(m.d());
  if (noise.cols() != d) throw DimensionMismatch("noise has wrong number of columns");
  const Matrix<double>& b = m.B().values;
  Matrix<double> x(noise.rows(), d, 0.0);
  for (std::size_t obs = 0; obs < noise.rows(); ++obs) {
    for (std::size_t v = 0; v < d; ++v) {
      double best = 0.0;
      for (std::size_t u = 0; u < d; ++u) best = std::max(best, b(v, u) * noise(obs, u));
      x(obs, v) = best;
    }
  }
  return SampleMatrix(std::move(x));
}

[[nodiscard]] inline SampleMatrix sample(const MaxLinearModel& m, std::size_t n, const NoiseSpec& noise) {
  if (n == 0) throw EmptySample("sample size must be at least 1");
  return propagate(m, draw_noise(noise, n, m.d()));
}

/// Edge-minimal DAG D^B together with its weights c_vu = b_vu.
struct MinimalDag {
  Dag dag;
  EdgeWeights weights;
};

namespace detail {

inline void validate_coefficients(const CoefficientMatrix& b) {
  const Matrix<double>& m = b.values;
  if (!m.square() || m.rows() == 0) throw InvalidCoefficientMatrix("coefficient matrix must be square");
  const std::size_t n = m.rows();
  for (double x : m.data()) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidCoefficientMatrix("negative or non-finite coefficient");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (m(i, i) != 1.0) throw InvalidCoefficientMatrix("diagonal coefficient is not 1");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m(i, j) > 0.0 && m(j, i) > 0.0) {
        throw InvalidCoefficientMatrix("vertices " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                       " reach each other");
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t k = 0; k < n; ++k) {
      if (m(v, k) == 0.0) continue;
      for (std::size_t u = 0; u < n; ++u) {
        if (m(k, u) > 0.0 && m(v, u) == 0.0) {
          throw InvalidCoefficientMatrix("support of B is not transitively closed at (" + std::to_string(v + 1) +
                                         "," + std::to_string(u + 1) + ")");
        }
      }
    }
  }
}

}  // namespace detail

/// Keeps u -> v iff b_vu exceeds every two-step composition b_vk * b_ku; an
/// edge tied with a composition within rtol is dropped.
[[nodiscard]] inline MinimalDag minimal_dag(const CoefficientMatrix& b, double rtol = kDefaultRtol) {
  detail::validate_coefficients(b);
  const Matrix<double>& m = b.values;
  const std::size_t n = m.rows();
  std::vector<Edge> edges;
  EdgeWeights weights;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t u = 0; u < n; ++u) {
      if (u == v || m(v, u) == 0.0) continue;
      double via = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == u || k == v) continue;
        via = std::max(via, m(v, k) * m(k, u));
      }
      if (approx_less_equal(m(v, u), via, rtol)) continue;
      const Edge e{static_cast<Vertex>(u + 1), static_cast<Vertex>(v + 1)};
      edges.push_back(e);
      weights[e] = m(v, u);
    }
  }
  Dag g(static_cast<int>(n), std::move(edges));
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t u = 0; u < n; ++u) {
      if ((g.reach()(v, u) != 0) != (m(v, u) > 0.0)) {
        throw InvalidCoefficientMatrix("support of B is not the reachability relation of its minimal DAG");
      }
    }
  }
  return {std::move(g), std::move(weights)};
}

struct AdmissibleWeight {
  enum class Kind { fixed, open_interval };
  Kind kind = Kind::fixed;
  /// The fixed value, or the upper end of (0, value).
  double value = 0.0;
  bool operator==(const AdmissibleWeight&) const = default;
};

/// For a DAG g with the reachability of D^B and at least its edges: edges of
/// D^B are pinned to b_vs, every extra edge may take any weight in (0, b_vs).
[[nodiscard]] inline std::map<Edge, AdmissibleWeight> admissible_weights(const CoefficientMatrix& b, const Dag& g,
                                                                         double rtol = kDefaultRtol) {
  if (b.d() != g.d()) throw DimensionMismatch("coefficient matrix and DAG differ in dimension");
  const MinimalDag minimal = minimal_dag(b, rtol);
  const auto n = static_cast<std::size_t>(g.d());
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t u = 0; u < n; ++u) {
      if ((g.reach()(v, u) != 0) != (b.values(v, u) > 0.0)) {
        throw IncompatibleDag("reachability of the DAG differs from the support of B");
      }
    }
  }
  for (const Edge& e : minimal.dag.edges()) {
    if (!g.has_edge(e.from, e.to)) {
      throw IncompatibleDag("DAG lacks minimal edge " + std::to_string(e.from) + "->" + std::to_string(e.to));
    }
  }
  std::map<Edge, AdmissibleWeight> out;
  for (const Edge& e : g.edges()) {
    const double bvs = b(e.to, e.from);
    out[e] = minimal.dag.has_edge(e.from, e.to) ? AdmissibleWeight{AdmissibleWeight::Kind::fixed, bvs}
                                                 : AdmissibleWeight{AdmissibleWeight::Kind::open_interval, bvs};
  }
  return out;
}

/// Rows of B for the vertices in A (ascending), all noise columns kept.
[[nodiscard]] inline Matrix<double> marginal_rows(const CoefficientMatrix& b, const VertexSet& a) {
  if (a.empty()) throw EmptyVertexSet("marginal vertex set is empty");
  detail::check_vertices(a, b.d());
  const auto d = static_cast<std::size_t>(b.d());
  Matrix<double> out(a.size(), d);
  std::size_t r = 0;
  for (Vertex v : a) {
    for (std::size_t u = 0; u < d; ++u) out(r, u) = b.values(detail::index_of(v), u);
    ++r;
  }
  return out;
}

}  // namespace maxlin
