// One line per acceptance criterion; exit status 1 if any fails.

#include <cfloat>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "maxlin/maxlin.hpp"
#include "support/fixtures.hpp"
#include "support/random_dags.hpp"

namespace {

using namespace maxlin;
using namespace maxlin::testing;
using Clock = std::chrono::steady_clock;

// Pinned tolerances.
constexpr double kOracleRtol = 1e-12;    // closure vs path enumeration
constexpr double kRecoveryRtol = 1e-9;   // "exact" recovery of weights from ratios
constexpr double kLiteralRtol = DBL_EPSILON;  // b41 vs the decimal literal 0.72

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome criterion_1() {
  const WeightMatrix c = weight_matrix(diamond(), diamond_weights());
  const auto t0 = Clock::now();
  const CoefficientMatrix b = closure(c);
  const double elapsed = seconds_since(t0);
  const double b41 = b(4, 1);
  const bool formula = b41 == std::max(c(4, 2) * c(2, 1), c(4, 3) * c(3, 1));
  const bool oracle = b.values == brute_force_B(diamond(), c).values;
  const bool literal = approx_equal(b41, 0.72, kLiteralRtol);
  bool support = true;
  for (std::size_t v = 0; v < 4; ++v) {
    for (std::size_t u = 0; u < 4; ++u) support &= (b.values(v, u) > 0) == (diamond().reach()(v, u) == 1);
  }
  return {formula && oracle && literal && support && elapsed < 1e-3,
          fmt("b41 = %.17g, oracle %s, %.1f us", b41, oracle ? "equal" : "differs", elapsed * 1e6)};
}

Outcome criterion_2() {
  Rng rng(1002);
  const auto t0 = Clock::now();
  std::size_t queries = 0, disagreements = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Dag g = random_dag(2, 8, rng);
    // Every assignment of vertices to A, B, S or nothing.
    std::size_t total = 1;
    for (int i = 0; i < g.d(); ++i) total *= 4;
    for (std::size_t code = 0; code < total; ++code) {
      SeparationQuery q;
      std::size_t rest = code;
      for (Vertex v = 1; v <= g.d(); ++v, rest /= 4) {
        if (rest % 4 == 0) q.a.insert(v);
        if (rest % 4 == 1) q.b.insert(v);
        if (rest % 4 == 2) q.s.insert(v);
      }
      if (q.a.empty() || q.b.empty()) continue;
      ++queries;
      disagreements += d_separated(g, q) != m_separated(g, q);
    }
  }
  const double elapsed = seconds_since(t0);
  return {disagreements == 0 && queries >= 100'000 && elapsed < 30.0,
          fmt("%zu queries, %zu disagreements, %.2f s", queries, disagreements, elapsed)};
}

Outcome criterion_3() {
  const Dag g = diamond_tail();
  const SeparationQuery given_1{{2}, {3}, {1}};
  const SeparationQuery given_15{{2}, {3}, {1, 5}};
  const bool ok = d_separated(g, given_1) && m_separated(g, given_1) && !d_separated(g, given_15) &&
                  !m_separated(g, given_15);
  return {ok, "2 _||_ 3 | 1 true, 2 _||_ 3 | {1,5} false, both methods"};
}

Outcome criterion_4() {
  const std::vector<Dag> equivalent{chain3(), reversed_chain3(), fork3()};
  bool three = true;
  for (const Dag& a : equivalent) {
    for (const Dag& b : equivalent) three &= markov_equivalent(a, b);
    three &= !markov_equivalent(a, collider3()) && !markov_equivalent(collider3(), a);
  }
  Rng rng(1004);
  int agree = 0, equivalent_pairs = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Dag g1 = random_dag(2, 6, rng);
    const Dag g2 = trial % 2 ? reorient(g1, rng) : random_dag(g1.d(), 0.5, rng);
    const bool brute = enumerate_independences(g1, g1.d()) == enumerate_independences(g2, g2.d());
    agree += brute == markov_equivalent(g1, g2);
    equivalent_pairs += brute;
  }
  return {three && agree == 100,
          fmt("three-vertex DAGs %s, %d/100 pairs agree (%d equivalent)", three ? "ok" : "wrong", agree, equivalent_pairs)};
}

Outcome criterion_5() {
  Rng rng(1005);
  int agree = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Dag g = random_dag(1, 8, rng);
    const WeightMatrix c = weight_matrix(g, random_weights(g, rng));
    agree += approx_equal(closure(c).values, brute_force_B(g, c).values, kOracleRtol);
  }
  return {agree == 200, fmt("%d/200 within rtol 1e-12", agree)};
}

Outcome criterion_6() {
  Rng rng(1006);
  std::uniform_int_distribution<int> size(1, 10);
  int exact = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Dag g = random_polytree(size(rng), rng);
    const EdgeWeights w = random_weights(g, rng);
    const MinimalDag md = minimal_dag(closure(weight_matrix(g, w)));
    exact += md.dag == g && md.weights == w;
  }
  return {exact == 100, fmt("%d/100 polytrees recovered bit-exactly", exact)};
}

Outcome criterion_7() {
  Rng rng(1007);
  std::uniform_real_distribution<double> weight(0.05, 5.0);
  int tried = 0, ok = 0;
  for (int trial = 0; trial < 101; ++trial) {
    double c21 = 0.5, c31 = 0.8, c42 = 0.6, c43 = 0.9;
    if (trial > 0) {
      c21 = weight(rng), c31 = weight(rng), c42 = weight(rng), c43 = weight(rng);
      if (!(c42 * c21 < c43 * c31)) continue;
    }
    ++tried;
    const MaxLinearModel full = new_model(diamond(), {{{1, 2}, c21}, {{1, 3}, c31}, {{2, 4}, c42}, {{3, 4}, c43}});
    const MaxLinearModel cut =
        new_model(build_dag(4, {{1, 3}, {2, 4}, {3, 4}}), {{{1, 3}, c31}, {{2, 4}, c42}, {{3, 4}, c43}});
    ok += marginal_rows(full.B(), {1, 3, 4}) == marginal_rows(cut.B(), {1, 3, 4}) &&
          minimal_dag(full.B()).dag == diamond();
  }
  return {ok == tried, fmt("%d/%d weightings (reference weights first)", ok, tried)};
}

Outcome criterion_8() {
  const MaxLinearModel m = diamond_model();
  const auto t0 = Clock::now();
  int recovered = 0, ordered = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SampleMatrix s = sample(m, 200, NoiseSpec::frechet(1.0, seed));
    const WeightMatrix c_hat = gmle_edge_weights(m.dag(), s);
    recovered += approx_equal(c_hat.values, m.C().values, kRecoveryRtol);
    const CoefficientMatrix b_hat = closure(c_hat);
    ordered += approx_less_equal(m.B().values, b_hat.values, kRecoveryRtol) &&
               approx_less_equal(b_hat.values, alt_estimator(m.dag(), s).values, kRecoveryRtol);
  }
  const double elapsed = seconds_since(t0);
  return {recovered >= 48 && ordered == 50 && elapsed < 10.0,
          fmt("C recovered %d/50, B <= B_hat <= B_tilde %d/50, %.3f s", recovered, ordered, elapsed)};
}

Outcome criterion_9() {
  const MaxLinearModel m = diamond_model();
  int recovered = 0, independent = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    try {
      const MinimalDag md = identify_structure(sample(m, 1000, NoiseSpec::frechet(1.0, seed)));
      bool ok = md.dag == diamond();
      for (const auto& [e, w] : diamond_weights()) ok = ok && approx_equal(md.weights.at(e), w, kRecoveryRtol);
      recovered += ok;
    } catch (const InvalidCoefficientMatrix&) {
    }
    const MaxLinearModel indep = new_model(build_dag(2, {}), {});
    const CoefficientMatrix b = identify_B(sample(indep, 1000, NoiseSpec::frechet(1.0, 1000 + seed)));
    independent += b(1, 2) == 0.0 && b(2, 1) == 0.0;
  }
  return {recovered >= 19 && independent == 20,
          fmt("diamond %d/20, independent columns %d/20", recovered, independent)};
}

Outcome criterion_10() {
  struct Point {
    double c, c_star, x1, x2, fwd, bwd;
  };
  const std::vector<Point> points{
      {0.9, 0.7, 1.0, 1.2, 0.5, 0.5}, {0.9, 0.7, 1.0, 0.9, 1.0, 0.0}, {0.9, 0.7, 1.0, 0.5, 0.0, 0.0},
      {0.9, 0.7, 1.0, 0.8, 0.0, 1.0}, {0.9, 0.7, 1.0, 0.7, 0.0, 1.0}, {0.9, 0.7, 1.0, 0.6, 0.0, 0.0},
      {0.7, 0.7, 1.0, 0.9, 0.5, 0.5}, {0.7, 0.7, 1.0, 0.7, 0.5, 0.5}, {0.7, 0.7, 1.0, 0.6, 0.0, 0.0},
  };
  int matched = 0;
  for (const Point& p : points) {
    const GlrVerdict v = glr_two_node(p.c, p.c_star, p.x1, p.x2);
    matched += v.rho_forward == p.fwd && v.rho_backward == p.bwd;
  }
  const MaxLinearModel m = new_model(build_dag(2, {{1, 2}}), {{{1, 2}, 0.8}});
  int dominated = 0, checks = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SampleMatrix s = sample(m, 50, NoiseSpec::frechet(1.0, seed));
    for (int k = 1; k <= 100; ++k) {
      const GlrSampleResult r = glr_two_node_sample(0.016 * k, s);
      ++checks;
      dominated += r.rho_hat_vs_c >= r.rho_c_vs_hat;
    }
  }
  return {matched == 9 && dominated == checks,
          fmt("%d/9 point values, GMLE dominance %d/%d", matched, dominated, checks)};
}

Outcome criterion_11() {
  Rng rng(1011);
  auto sep = [](const Dag& g, const VertexSet& a, const VertexSet& b, const VertexSet& s) {
    return a.empty() || b.empty() || d_separated(g, {a, b, s});
  };
  auto join = [](VertexSet x, const VertexSet& y) {
    x.insert(y.begin(), y.end());
    return x;
  };
  int violations = 0, fired = 0;
  for (int trial = 0; trial < 10'000; ++trial) {
    const Dag g = random_dag(2, 8, rng);
    const auto p = random_partition(g.d(), 4, rng);
    const VertexSet &a = p[0], &b = p[1], &c = p[2], &d = p[3];
    if (sep(g, a, b, c)) {
      ++fired;
      violations += !sep(g, b, a, c);
    }
    if (sep(g, a, join(b, d), c)) {
      ++fired;
      violations += !(sep(g, a, b, c) && sep(g, a, d, c));
      violations += !sep(g, a, b, join(c, d));
    }
    if (sep(g, a, b, c) && sep(g, a, d, join(b, c))) {
      ++fired;
      violations += !sep(g, a, join(b, d), c);
    }
    if (sep(g, a, b, join(c, d)) && sep(g, a, c, join(b, d))) {
      ++fired;
      violations += !sep(g, a, join(b, c), d);
    }
  }
  return {violations == 0, fmt("10000 instantiations, %d premises met, %d violations", fired, violations)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"diamond closure b41", criterion_1},
      {"d-separation == m-separation", criterion_2},
      {"d-separation verdicts on the diamond with tail", criterion_3},
      {"Markov equivalence", criterion_4},
      {"closure vs path enumeration", criterion_5},
      {"polytrees are their own minimal DAG", criterion_6},
      {"non-faithfulness witness", criterion_7},
      {"GMLE recovery and estimator ordering", criterion_8},
      {"structure identification", criterion_9},
      {"two-node likelihood ratios", criterion_10},
      {"graphoid axioms S1-S5", criterion_11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu  %-46s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
