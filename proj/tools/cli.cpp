#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "maxlin/io.hpp"
#include "maxlin/maxlin.hpp"

namespace maxlin::cli {
namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

io::DagDocument load_dag(const std::string& path) {
  auto in = open_input(path);
  return io::read_dag_json(in);
}

SampleMatrix load_samples(const std::string& path) {
  auto in = open_input(path);
  return io::read_sample_csv(in);
}

MaxLinearModel load_model(const std::string& path) {
  io::DagDocument doc = load_dag(path);
  if (!doc.weights) throw MissingEdgeWeight(path + " has no edge weights");
  return new_model(std::move(doc.dag), std::move(*doc.weights));
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string set_text(const VertexSet& s) {
  std::string out = "{";
  for (Vertex v : s) out += (out.size() > 1 ? "," : "") + std::to_string(v);
  return out + "}";
}

std::string set_json(const VertexSet& s) { return nlohmann::json(std::vector<Vertex>(s.begin(), s.end())).dump(); }

std::string statement_json(const IndependenceStatement& st) {
  return "{\"left\": " + set_json(st.a) + ", \"right\": " + set_json(st.b) + ", \"given\": " + set_json(st.s) +
         ", \"holds\": " + bool_text(st.holds) + "}";
}

template <typename T>
std::string count_matrix_json(const Matrix<T>& m) {
  std::ostringstream out;
  out << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << (r ? ", [" : "[");
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? ", " : "") << m(r, c);
    out << ']';
  }
  out << ']';
  return out.str();
}

void print_matrix(std::ostream& out, const std::string& label, const Matrix<double>& m) {
  out << label << " =\n" << io::matrix_to_table(m);
}

struct Options {
  bool json = false;

  std::string dag, dag1, dag2, model, samples, out_path, matrix, against;
  std::size_t n = 0;
  std::string noise = "frechet";
  double alpha = 1.0, mu = 0.0, sigma = 1.0;
  std::uint64_t seed = 0;
  std::vector<int> left, right, given;
  std::string method = "both";
  std::string kind = "ordered";
  int max_cond = -1;
  std::string estimator = "gmle";
  double atom_rtol = kDefaultAtomRtol;
  double c = 0.0, c_star = 0.0, x1 = 0.0, x2 = 0.0;
};

int cmd_closure(const Options& o, std::ostream& out) {
  const MaxLinearModel m = load_model(o.dag);
  if (o.json) {
    out << "{\"C\": " << io::matrix_to_json(m.C().values) << ", \"B\": " << io::matrix_to_json(m.B().values)
        << "}\n";
  } else {
    print_matrix(out, "B", m.B().values);
  }
  return kOk;
}

int cmd_sample(const Options& o, std::ostream& out) {
  const MaxLinearModel m = load_model(o.model);
  const NoiseSpec spec =
      o.noise == "frechet" ? NoiseSpec::frechet(o.alpha, o.seed) : NoiseSpec::lognormal(o.mu, o.sigma, o.seed);
  const SampleMatrix s = sample(m, o.n, spec);
  if (o.out_path.empty()) {
    io::write_sample_csv(out, s);
  } else {
    std::ofstream file(o.out_path);
    if (!file) throw Error("cannot write " + o.out_path);
    io::write_sample_csv(file, s);
  }
  return kOk;
}

int cmd_query(const Options& o, std::ostream& out, std::ostream& err) {
  const Dag g = load_dag(o.dag).dag;
  const SeparationQuery q{VertexSet(o.left.begin(), o.left.end()), VertexSet(o.right.begin(), o.right.end()),
                          VertexSet(o.given.begin(), o.given.end())};
  std::optional<bool> d_sep, m_sep;
  if (o.method != "m") d_sep = d_separated(g, q);
  if (o.method != "d") m_sep = m_separated(g, q);
  if (o.json) {
    out << '{';
    if (d_sep) out << "\"d_separated\": " << bool_text(*d_sep);
    if (m_sep) out << (d_sep ? ", " : "") << "\"m_separated\": " << bool_text(*m_sep);
    out << "}\n";
  } else {
    if (d_sep) out << "d-separated: " << bool_text(*d_sep);
    if (m_sep) out << (d_sep ? ", " : "") << "m-separated: " << bool_text(*m_sep);
    out << '\n';
  }
  if (d_sep && m_sep && *d_sep != *m_sep) {
    err << "internal error: d-separation and m-separation disagree\n";
    return kDomainError;
  }
  return kOk;
}

int cmd_statements(const Options& o, std::ostream& out) {
  const Dag g = load_dag(o.dag).dag;
  std::vector<IndependenceStatement> list;
  if (o.kind == "ordered") {
    list = markov_statements(g, MarkovKind::ordered);
  } else if (o.kind == "local") {
    list = markov_statements(g, MarkovKind::local);
  } else {
    list = enumerate_independences(g, o.max_cond < 0 ? g.d() : o.max_cond);
  }
  if (o.json) {
    out << '[';
    for (std::size_t i = 0; i < list.size(); ++i) out << (i ? ", " : "") << statement_json(list[i]);
    out << "]\n";
    return kOk;
  }
  for (const auto& st : list) {
    out << set_text(st.a) << " _||_ " << set_text(st.b) << " | " << set_text(st.s);
    if (o.kind == "global") out << " : " << bool_text(st.holds);
    out << '\n';
  }
  return kOk;
}

int cmd_equiv(const Options& o, std::ostream& out) {
  const bool eq = markov_equivalent(load_dag(o.dag1).dag, load_dag(o.dag2).dag);
  if (o.json) {
    out << "{\"markov_equivalent\": " << bool_text(eq) << "}\n";
  } else {
    out << "markov-equivalent: " << bool_text(eq) << '\n';
  }
  return kOk;
}

int cmd_minimize(const Options& o, std::ostream& out) {
  CoefficientMatrix b;
  if (!o.matrix.empty()) {
    auto in = open_input(o.matrix);
    std::stringstream text;
    text << in.rdbuf();
    b = CoefficientMatrix(io::parse_matrix_json(text.str()));
  } else {
    b = load_model(o.dag).B();
  }
  const MinimalDag minimal = minimal_dag(b);
  std::map<Edge, AdmissibleWeight> admissible;
  if (!o.against.empty()) admissible = admissible_weights(b, load_dag(o.against).dag);

  if (o.json) {
    out << "{\"minimal_dag\": " << io::dag_to_json(minimal.dag, &minimal.weights);
    if (!o.against.empty()) {
      out << ", \"admissible\": [";
      bool first = true;
      for (const auto& [e, a] : admissible) {
        out << (first ? "" : ", ") << "{\"from\": " << e.from << ", \"to\": " << e.to << ", \"kind\": \""
            << (a.kind == AdmissibleWeight::Kind::fixed ? "fixed" : "open_interval")
            << "\", \"bound\": " << io::format_real(a.value) << '}';
        first = false;
      }
      out << ']';
    }
    out << "}\n";
    return kOk;
  }
  out << io::dag_to_json(minimal.dag, &minimal.weights) << '\n';
  for (const auto& [e, a] : admissible) {
    out << e.from << "->" << e.to << ' ';
    if (a.kind == AdmissibleWeight::Kind::fixed) {
      out << "fixed " << io::format_real(a.value, 6) << '\n';
    } else {
      out << "open (0, " << io::format_real(a.value, 6) << ")\n";
    }
  }
  return kOk;
}

int cmd_estimate(const Options& o, std::ostream& out) {
  const Dag g = load_dag(o.dag).dag;
  const SampleMatrix s = load_samples(o.samples);
  if (o.estimator == "alt") {
    const CoefficientMatrix b = alt_estimator(g, s);
    if (o.json) {
      out << "{\"B_tilde\": " << io::matrix_to_json(b.values) << "}\n";
    } else {
      print_matrix(out, "B_tilde", b.values);
    }
    return kOk;
  }
  const WeightMatrix c = gmle_edge_weights(g, s);
  const CoefficientMatrix b = closure(c);
  if (o.json) {
    out << "{\"C_hat\": " << io::matrix_to_json(c.values) << ", \"B_hat\": " << io::matrix_to_json(b.values)
        << "}\n";
  } else {
    print_matrix(out, "C_hat", c.values);
    print_matrix(out, "B_hat", b.values);
  }
  return kOk;
}

int cmd_learn(const Options& o, std::ostream& out) {
  const SampleMatrix s = load_samples(o.samples);
  const RatioStatistics stats = ratio_statistics(s, o.atom_rtol);
  const CoefficientMatrix b = identify_B(s, o.atom_rtol);
  // The estimate is printed before the structure step, which may fail.
  if (o.json) {
    out << "{\"B_check\": " << io::matrix_to_json(b.values)
        << ", \"multiplicity\": " << count_matrix_json(stats.multiplicity);
    const MinimalDag minimal = minimal_dag(b);
    out << ", \"dag\": " << io::dag_to_json(minimal.dag, &minimal.weights) << "}\n";
    return kOk;
  }
  print_matrix(out, "B_check", b.values);
  out << "multiplicity =\n";
  for (std::size_t r = 0; r < stats.multiplicity.rows(); ++r) {
    for (std::size_t col = 0; col < stats.multiplicity.cols(); ++col) {
      out << (col ? " " : "") << stats.multiplicity(r, col);
    }
    out << '\n';
  }
  const MinimalDag minimal = minimal_dag(b);
  out << "dag = " << io::dag_to_json(minimal.dag, &minimal.weights) << '\n';
  return kOk;
}

int cmd_glr2(const Options& o, std::ostream& out) {
  if (!o.samples.empty()) {
    const GlrSampleResult r = glr_two_node_sample(o.c, load_samples(o.samples));
    if (o.json) {
      out << "{\"c_hat\": " << io::format_real(r.c_hat) << ", \"rho_hat_vs_c\": " << io::format_real(r.rho_hat_vs_c)
          << ", \"rho_c_vs_hat\": " << io::format_real(r.rho_c_vs_hat) << "}\n";
    } else {
      out << "c_hat = " << io::format_real(r.c_hat, 6) << '\n'
          << "rho(c_hat, c) = " << io::format_real(r.rho_hat_vs_c, 6) << '\n'
          << "rho(c, c_hat) = " << io::format_real(r.rho_c_vs_hat, 6) << '\n';
    }
    return kOk;
  }
  const GlrVerdict v = glr_two_node(o.c, o.c_star, o.x1, o.x2);
  if (o.json) {
    out << "{\"rho_forward\": " << io::format_real(v.rho_forward)
        << ", \"rho_backward\": " << io::format_real(v.rho_backward) << "}\n";
  } else {
    out << "rho(c, c*) = " << io::format_real(v.rho_forward, 6) << '\n'
        << "rho(c*, c) = " << io::format_real(v.rho_backward, 6) << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Recursive max-linear Bayesian networks", "maxlin"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Machine-readable JSON output");

  auto* closure_cmd = app.add_subcommand("closure", "Coefficient matrix B of a weighted DAG");
  closure_cmd->add_option("--dag", o.dag, "DAG JSON with edge weights")->required();

  auto* sample_cmd = app.add_subcommand("sample", "Draw observations X = B (.) Z");
  sample_cmd->add_option("--model", o.model, "DAG JSON with edge weights")->required();
  sample_cmd->add_option("--n", o.n, "Number of observations")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--noise", o.noise, "Noise family")->check(CLI::IsMember({"frechet", "lognormal"}));
  sample_cmd->add_option("--alpha", o.alpha, "Frechet shape");
  sample_cmd->add_option("--mu", o.mu, "Log-normal location");
  sample_cmd->add_option("--sigma", o.sigma, "Log-normal scale");
  sample_cmd->add_option("--seed", o.seed, "Random seed")->required();
  sample_cmd->add_option("--out", o.out_path, "Output CSV (default: stdout)");

  auto* query_cmd = app.add_subcommand("query", "Separation query A _||_ B | S");
  query_cmd->add_option("--dag", o.dag, "DAG JSON")->required();
  query_cmd->add_option("--left", o.left, "Vertices of A")->required()->delimiter(',');
  query_cmd->add_option("--right", o.right, "Vertices of B")->required()->delimiter(',');
  query_cmd->add_option("--given", o.given, "Vertices of S")->delimiter(',');
  query_cmd->add_option("--method", o.method, "d, m or both")->check(CLI::IsMember({"d", "m", "both"}));

  auto* statements_cmd = app.add_subcommand("statements", "Markov property statements");
  statements_cmd->add_option("--dag", o.dag, "DAG JSON")->required();
  statements_cmd->add_option("--kind", o.kind, "ordered, local or global")
      ->check(CLI::IsMember({"ordered", "local", "global"}));
  statements_cmd->add_option("--max-cond", o.max_cond, "Largest conditioning set for --kind global");

  auto* equiv_cmd = app.add_subcommand("equiv", "Markov equivalence of two DAGs");
  equiv_cmd->add_option("--dag1", o.dag1, "First DAG JSON")->required();
  equiv_cmd->add_option("--dag2", o.dag2, "Second DAG JSON")->required();

  auto* minimize_cmd = app.add_subcommand("minimize", "Minimal max-linear DAG of B");
  auto* matrix_opt = minimize_cmd->add_option("--matrix", o.matrix, "Coefficient matrix JSON");
  auto* mdag_opt = minimize_cmd->add_option("--dag", o.dag, "Weighted DAG JSON (B is computed)");
  matrix_opt->excludes(mdag_opt);
  minimize_cmd->add_option("--against", o.against, "DAG JSON whose admissible weights to report");

  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate weights on a known DAG");
  estimate_cmd->add_option("--dag", o.dag, "DAG JSON")->required();
  estimate_cmd->add_option("--samples", o.samples, "Sample CSV")->required();
  estimate_cmd->add_option("--estimator", o.estimator, "gmle or alt")->check(CLI::IsMember({"gmle", "alt"}));

  auto* learn_cmd = app.add_subcommand("learn", "Identify B and the minimal DAG from samples");
  learn_cmd->add_option("--samples", o.samples, "Sample CSV")->required();
  learn_cmd->add_option("--atom-rtol", o.atom_rtol, "Relative tolerance for atoms")->check(CLI::NonNegativeNumber);

  auto* glr_cmd = app.add_subcommand("glr2", "Two-node generalized likelihood ratios");
  glr_cmd->add_option("--c", o.c, "Weight c (or competitor c with --samples)")->required();
  auto* cstar_opt = glr_cmd->add_option("--c-star", o.c_star, "Weight c* <= c");
  auto* x1_opt = glr_cmd->add_option("--x1", o.x1, "Observation x1");
  auto* x2_opt = glr_cmd->add_option("--x2", o.x2, "Observation x2");
  auto* gsamples_opt = glr_cmd->add_option("--samples", o.samples, "Two-column sample CSV");
  gsamples_opt->excludes(cstar_opt)->excludes(x1_opt)->excludes(x2_opt);
  cstar_opt->needs(x1_opt)->needs(x2_opt);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (*glr_cmd && !*gsamples_opt && !*cstar_opt) {
      throw CLI::RequiredError("glr2 needs either --samples or --c-star/--x1/--x2");
    }
    if (*minimize_cmd && !*matrix_opt && !*mdag_opt) throw CLI::RequiredError("minimize needs --matrix or --dag");
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n";
    const auto selected = app.get_subcommands();
    err << (selected.empty() ? app.help() : selected.front()->help());
    return kUsageError;
  }

  try {
    if (*closure_cmd) return cmd_closure(o, out);
    if (*sample_cmd) return cmd_sample(o, out);
    if (*query_cmd) return cmd_query(o, out, err);
    if (*statements_cmd) return cmd_statements(o, out);
    if (*equiv_cmd) return cmd_equiv(o, out);
    if (*minimize_cmd) return cmd_minimize(o, out);
    if (*estimate_cmd) return cmd_estimate(o, out);
    if (*learn_cmd) return cmd_learn(o, out);
    if (*glr_cmd) return cmd_glr2(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace maxlin::cli
