#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "maxlin/core.hpp"
#include "maxlin/graph.hpp"
#include "maxlin/model.hpp"
#include "maxlin/tropical.hpp"

// File formats:
//   DAG JSON    {"d": 4, "edges": [{"from": 1, "to": 2, "weight": 0.5}, ...], "names": [...]}
//               weights and names optional; weights are all-or-nothing.
//   sample CSV  header x1,...,xd then one observation per line.
//   matrix JSON row-major nested arrays.
// Reals are written with 17 significant digits so that they read back
// bit-identical.

namespace maxlin::io {

struct DagDocument {
  Dag dag;
  std::optional<EdgeWeights> weights;
};

[[nodiscard]] inline std::string format_real(double x, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

[[nodiscard]] inline DagDocument parse_dag_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed DAG JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("d") || !doc["d"].is_number_integer()) {
    throw FormatError("DAG JSON needs an integer field \"d\"");
  }
  const int d = doc["d"].get<int>();
  std::vector<Edge> edges;
  EdgeWeights weights;
  std::size_t weighted = 0;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw FormatError("\"edges\" must be an array");
    for (const auto& item : doc["edges"]) {
      if (!item.is_object() || !item.contains("from") || !item.contains("to") ||
          !item["from"].is_number_integer() || !item["to"].is_number_integer()) {
        throw FormatError("each edge needs integer \"from\" and \"to\"");
      }
      const Edge e{item["from"].get<int>(), item["to"].get<int>()};
      edges.push_back(e);
      if (item.contains("weight") && !item["weight"].is_null()) {
        if (!item["weight"].is_number()) throw FormatError("edge weight must be a number");
        weights[e] = item["weight"].get<double>();
        ++weighted;
      }
    }
  }
  std::vector<std::string> names;
  if (doc.contains("names")) {
    if (!doc["names"].is_array()) throw FormatError("\"names\" must be an array");
    for (const auto& name : doc["names"]) {
      if (!name.is_string()) throw FormatError("names must be strings");
      names.push_back(name.get<std::string>());
    }
  }
  DagDocument out{Dag(d, edges, std::move(names)), std::nullopt};
  if (weighted > 0) {
    if (weighted != edges.size()) throw MissingEdgeWeight("some edges carry weights and some do not");
    out.weights = std::move(weights);
  }
  return out;
}

[[nodiscard]] inline DagDocument read_dag_json(std::istream& in) {
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_dag_json(buf.str());
}

[[nodiscard]] inline std::string dag_to_json(const Dag& g, const EdgeWeights* weights = nullptr) {
  std::ostringstream out;
  out << "{\"d\": " << g.d() << ", \"edges\": [";
  bool first = true;
  for (const Edge& e : g.edges()) {
    out << (first ? "" : ", ") << "{\"from\": " << e.from << ", \"to\": " << e.to;
    if (weights) {
      auto it = weights->find(e);
      if (it != weights->end()) out << ", \"weight\": " << format_real(it->second);
    }
    out << "}";
    first = false;
  }
  out << "]";
  if (!g.names().empty()) out << ", \"names\": " << nlohmann::json(g.names()).dump();
  out << "}";
  return out.str();
}

inline void write_sample_csv(std::ostream& out, const SampleMatrix& s) {
  for (Vertex v = 1; v <= s.d(); ++v) out << (v == 1 ? "" : ",") << 'x' << v;
  out << '\n';
  for (std::size_t obs = 0; obs < s.n(); ++obs) {
    for (Vertex v = 1; v <= s.d(); ++v) out << (v == 1 ? "" : ",") << format_real(s.x(obs, v));
    out << '\n';
  }
}

[[nodiscard]] inline SampleMatrix read_sample_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("sample CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::size_t d = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t fields = 0;
    const char* p = line.c_str();
    while (true) {
      char* end = nullptr;
      const double x = std::strtod(p, &end);
      if (end == p) throw FormatError("sample CSV line " + std::to_string(lineno) + ": expected a number");
      values.push_back(x);
      ++fields;
      p = end;
      if (*p == ',') {
        ++p;
        continue;
      }
      if (*p != '\0') throw FormatError("sample CSV line " + std::to_string(lineno) + ": unexpected character");
      break;
    }
    if (fields != d) {
      throw FormatError("sample CSV line " + std::to_string(lineno) + ": expected " + std::to_string(d) + " fields");
    }
    ++rows;
  }
  Matrix<double> m(rows, d);
  for (std::size_t i = 0; i < values.size(); ++i) m(i / d, i % d) = values[i];
  return SampleMatrix(std::move(m));
}

[[nodiscard]] inline std::string matrix_to_json(const Matrix<double>& m) {
  std::ostringstream out;
  out << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << (r ? ", [" : "[");
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? ", " : "") << format_real(m(r, c));
    out << ']';
  }
  out << ']';
  return out.str();
}

[[nodiscard]] inline Matrix<double> parse_matrix_json(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    return Matrix<double>::from_rows(doc.get<std::vector<std::vector<double>>>());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed matrix JSON: ") + e.what());
  }
}

/// Right-aligned table with `digits` significant digits.
[[nodiscard]] inline std::string matrix_to_table(const Matrix<double>& m, int digits = 6) {
  std::vector<std::string> cells;
  std::size_t width = 1;
  for (double x : m.data()) {
    cells.push_back(format_real(x, digits));
    width = std::max(width, cells.back().size());
  }
  std::ostringstream out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const std::string& cell = cells[r * m.cols() + c];
      out << (c ? "  " : "") << std::string(width - cell.size(), ' ') << cell;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace maxlin::io
