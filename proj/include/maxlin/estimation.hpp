#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>

#include "maxlin/core.hpp"
#include "maxlin/graph.hpp"
#include "maxlin/model.hpp"
#include "maxlin/tropical.hpp"

namespace maxlin {

/// Default relative tolerance for deciding that two ratios coincide (an atom).
inline constexpr double kDefaultAtomRtol = 1e-9;

/// For every ordered pair (i, j): the smallest ratio x_i / x_j over the sample
/// and how many observations attain it within the atom tolerance.
struct RatioStatistics {
  Matrix<double> min_ratio;
  Matrix<std::size_t> multiplicity;

  [[nodiscard]] double min(Vertex i, Vertex j) const { return min_ratio(detail::index_of(i), detail::index_of(j)); }
  [[nodiscard]] std::size_t count(Vertex i, Vertex j) const {
    return multiplicity(detail::index_of(i), detail::index_of(j));
  }
};

namespace detail {

inline void check_sample(const SampleMatrix& s) {
  if (s.n() == 0) throw EmptySample("sample has no observations");
}

inline void check_sample(const Dag& g, const SampleMatrix& s) {
  check_sample(s);
  if (s.d() != g.d()) {
    throw DimensionMismatch("sample has " + std::to_string(s.d()) + " columns, DAG has " + std::to_string(g.d()) +
                            " vertices");
  }
}

/// min over observations of x_i / x_j.
inline double min_ratio(const SampleMatrix& s, Vertex i, Vertex j) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t obs = 0; obs < s.n(); ++obs) best = std::min(best, s.x(obs, i) / s.x(obs, j));
  return best;
}

}  // namespace detail

[[nodiscard]] inline RatioStatistics ratio_statistics(const SampleMatrix& s, double atom_rtol = kDefaultAtomRtol) {
  detail::check_sample(s);
  const auto d = static_cast<std::size_t>(s.d());
  RatioStatistics out{Matrix<double>(d, d, 1.0), Matrix<std::size_t>(d, d, s.n())};
  for (Vertex i = 1; i <= s.d(); ++i) {
    for (Vertex j = 1; j <= s.d(); ++j) {
      if (i == j) continue;
      const double lo = detail::min_ratio(s, i, j);
      std::size_t hits = 0;
      for (std::size_t obs = 0; obs < s.n(); ++obs) {
        if (approx_equal(s.x(obs, i) / s.x(obs, j), lo, atom_rtol)) ++hits;
      }
      out.min_ratio(detail::index_of(i), detail::index_of(j)) = lo;
      out.multiplicity(detail::index_of(i), detail::index_of(j)) = hits;
    }
  }
  return out;
}

/// Generalized maximum likelihood estimate of the edge weights:
/// c_ij = min over observations of x_i / x_j for each edge j -> i.
[[nodiscard]] inline WeightMatrix gmle_edge_weights(const Dag& g, const SampleMatrix& s) {
  detail::check_sample(g, s);
  Matrix<double> c = Matrix<double>::identity(static_cast<std::size_t>(g.d()));
  for (const Edge& e : g.edges()) {
    c(detail::index_of(e.to), detail::index_of(e.from)) = detail::min_ratio(s, e.to, e.from);
  }
  return WeightMatrix(std::move(c));
}

/// Coefficient matrix implied by the GMLE edge weights.
[[nodiscard]] inline CoefficientMatrix gmle_B(const Dag& g, const SampleMatrix& s) {
  return closure(gmle_edge_weights(g, s));
}

/// Direct estimate b_ij = min x_i / x_j over observations, for every ancestor
/// j of i. Never below the GMLE-implied matrix.
[[nodiscard]] inline CoefficientMatrix alt_estimator(const Dag& g, const SampleMatrix& s) {
  detail::check_sample(g, s);
  const auto d = static_cast<std::size_t>(g.d());
  Matrix<double> b = Matrix<double>::identity(d);
  for (Vertex i = 1; i <= g.d(); ++i) {
    for (Vertex j = 1; j <= g.d(); ++j) {
      if (i != j && g.reachable(j, i)) b(detail::index_of(i), detail::index_of(j)) = detail::min_ratio(s, i, j);
    }
  }
  return CoefficientMatrix(std::move(b));
}

/// Structure-free estimate of B: the minimum ratio for (i, j) is kept only if
/// it is attained at least twice, since x_i / x_j has an atom at b_ij exactly
/// when j is an ancestor of i.
[[nodiscard]] inline CoefficientMatrix identify_B(const SampleMatrix& s, double atom_rtol = kDefaultAtomRtol) {
  detail::check_sample(s);
  if (s.n() < 2) throw InsufficientSample("atom detection needs at least two observations");
  const RatioStatistics stats = ratio_statistics(s, atom_rtol);
  const auto d = static_cast<std::size_t>(s.d());
  Matrix<double> b = Matrix<double>::identity(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (i != j && stats.multiplicity(i, j) >= 2) b(i, j) = stats.min_ratio(i, j);
    }
  }
  return CoefficientMatrix(std::move(b));
}

/// Minimal DAG and weights recovered from the sample alone. Throws
/// InvalidCoefficientMatrix when the detected atoms do not form a transitive
/// relation; the pattern is not repaired.
[[nodiscard]] inline MinimalDag identify_structure(const SampleMatrix& s, double atom_rtol = kDefaultAtomRtol,
                                                   double rtol = kDefaultRtol) {
  return minimal_dag(identify_B(s, atom_rtol), rtol);
}

/// Generalized likelihood ratios rho_x(P, Q) = dP / d(P + Q)(x).
struct GlrVerdict {
  double rho_forward = 0.0;
  double rho_backward = 0.0;
};

/// Two-node DAG 1 -> 2 with weights c >= c_star: returns rho(c, c_star) as
/// rho_forward and rho(c_star, c) as rho_backward at the point (x1, x2).
[[nodiscard]] inline GlrVerdict glr_two_node(double c, double c_star, double x1, double x2,
                                             double rtol = kDefaultRtol) {
  if (!(c > 0.0) || !(c_star > 0.0) || !(x1 > 0.0) || !(x2 > 0.0)) {
    throw NonPositiveInput("weights and observations must be positive");
  }
  if (c < c_star && !approx_equal(c, c_star, rtol)) {
    throw std::invalid_argument("glr_two_node expects c >= c_star");
  }
  const double on_c = c * x1;
  const bool at_c = approx_equal(x2, on_c, rtol);
  if (approx_equal(c, c_star, rtol)) {
    const double v = (x2 > on_c || at_c) ? 0.5 : 0.0;
    return {v, v};
  }
  GlrVerdict out;
  if (at_c) {
    out = {1.0, 0.0};
  } else if (x2 > on_c) {
    out = {0.5, 0.5};
  } else {
    const double on_star = c_star * x1;
    const bool in_band = x2 > on_star || approx_equal(x2, on_star, rtol);
    out = {0.0, in_band ? 1.0 : 0.0};
  }
  return out;
}

struct GlrSampleResult {
  double rho_hat_vs_c = 0.0;
  double rho_c_vs_hat = 0.0;
  double c_hat = 0.0;
};

/// Product likelihood ratios of the GMLE c_hat = min x2 / x1 against a
/// competitor c, for a two-column sample from 1 -> 2.
[[nodiscard]] inline GlrSampleResult glr_two_node_sample(double c, const SampleMatrix& s,
                                                         double rtol = kDefaultRtol) {
  detail::check_sample(s);
  if (s.d() != 2) throw DimensionMismatch("two-node likelihood ratio needs a two-column sample");
  if (!(c > 0.0)) throw NonPositiveInput("competitor weight must be positive");
  const std::size_t n = s.n();
  std::vector<double> y(n);
  for (std::size_t obs = 0; obs < n; ++obs) y[obs] = s.x(obs, 2) / s.x(obs, 1);
  const double c_hat = *std::min_element(y.begin(), y.end());
  // n_+(t) = #{y > t}, with ratios within rtol of t counted as equal to it.
  auto above = [&](double t) {
    return static_cast<int>(std::count_if(y.begin(), y.end(), [&](double v) {
      return v > t && !approx_equal(v, t, rtol);
    }));
  };
  auto pow2 = [](int e) { return std::ldexp(1.0, -e); };

  GlrSampleResult out;
  out.c_hat = c_hat;
  if (approx_equal(c, c_hat, rtol)) {
    out.rho_hat_vs_c = pow2(static_cast<int>(n));
    out.rho_c_vs_hat = out.rho_hat_vs_c;
  } else if (c > c_hat) {
    const bool observed = std::any_of(y.begin(), y.end(), [&](double v) { return approx_equal(v, c, rtol); });
    out.rho_hat_vs_c = observed ? 0.0 : pow2(above(c));
    out.rho_c_vs_hat = 0.0;
  } else {
    out.rho_hat_vs_c = pow2(above(c_hat));
    out.rho_c_vs_hat = 0.0;
  }
  if (out.rho_hat_vs_c < out.rho_c_vs_hat) throw std::logic_error("GMLE dominated by a competitor");
  return out;
}

}  // namespace maxlin
