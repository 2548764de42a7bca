#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "matchpoly/char_poly.hpp"
#include "matchpoly/errors.hpp"
#include "matchpoly/gallai_edmonds.hpp"
#include "matchpoly/graph.hpp"
#include "matchpoly/path_tree.hpp"
#include "matchpoly/polynomial.hpp"
#include "matchpoly/roots.hpp"

namespace matchpoly::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace detail {

inline json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // byte is 1-based and points just past the offending character
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ": JSON syntax error at line " + std::to_string(line) + ", column " +
                     std::to_string(col));
  }
}

inline const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing field \"" + key + "\"");
  return *it;
}

inline Rational rational_field(const json& v, const std::string& where) {
  if (!v.is_string()) throw InputError(where + ": expected a fraction string such as \"3/2\"");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
}

inline std::string string_field(const json& v, const std::string& where) {
  if (!v.is_string()) throw InputError(where + ": expected a string");
  return v.get<std::string>();
}

inline long integer_field(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw InputError(where + ": expected an integer");
  return v.get<long>();
}

}  // namespace detail

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

inline WeightedGraph graph_from_json(const json& j) {
  const json& verts = detail::field(j, "vertices", "graph");
  if (!verts.is_array()) throw InputError("graph.vertices: expected an array");
  GraphBuilder b;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const std::string where = "vertices[" + std::to_string(i) + "]";
    const json& v = verts[i];
    std::string id = detail::string_field(detail::field(v, "id", where), where + ".id");
    Rational w1 = detail::rational_field(detail::field(v, "w1", where), where + ".w1");
    try {
      b.add_vertex(std::move(id), std::move(w1));
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  if (j.contains("edges")) {
    const json& edges = j["edges"];
    if (!edges.is_array()) throw InputError("graph.edges: expected an array");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::string where = "edges[" + std::to_string(i) + "]";
      const json& e = edges[i];
      std::string u = detail::string_field(detail::field(e, "u", where), where + ".u");
      std::string v = detail::string_field(detail::field(e, "v", where), where + ".v");
      const json& w = detail::field(e, "w", where);
      Rational re = detail::rational_field(detail::field(w, "re", where + ".w"), where + ".w.re");
      Rational im(0);
      if (w.contains("im")) im = detail::rational_field(w["im"], where + ".w.im");
      try {
        b.add_edge(u, v, GaussianRational(std::move(re), std::move(im)));
      } catch (const InputError& ex) {
        throw InputError(where + ": " + ex.what());
      }
    }
  }
  return b.build();
}

inline WeightedGraph parse_graph(const std::string& text, const std::string& source = "input") {
  return graph_from_json(detail::parse_text(text, source));
}

inline ordered_json graph_to_json(const WeightedGraph& g) {
  ordered_json verts = ordered_json::array(), edges = ordered_json::array();
  for (Vertex v = 0; v < g.order(); ++v) verts.push_back({{"id", g.id(v)}, {"w1", g.vertex_weight(v).str()}});
  for (const auto& e : g.edges())
    edges.push_back({{"u", g.id(e.u)}, {"v", g.id(e.v)}, {"w", {{"re", e.w.re().str()}, {"im", e.w.im().str()}}}});
  return {{"vertices", verts}, {"edges", edges}};
}

inline std::string serialize_graph(const WeightedGraph& g) { return graph_to_json(g).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Hermitian matrices
// ---------------------------------------------------------------------------

inline HermitianWeightedMatrix matrix_from_json(const json& j) {
  long n = detail::integer_field(detail::field(j, "n", "matrix"), "matrix.n");
  if (n < 0) throw InputError("matrix.n: must be non-negative");
  const auto un = static_cast<std::size_t>(n);
  HermitianWeightedMatrix m(un);
  std::vector<bool> seen(un * un, false);
  const json& entries = detail::field(j, "entries", "matrix");
  if (!entries.is_array()) throw InputError("matrix.entries: expected an array");
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::string where = "entries[" + std::to_string(k) + "]";
    const json& e = entries[k];
    long i = detail::integer_field(detail::field(e, "i", where), where + ".i");
    long jj = detail::integer_field(detail::field(e, "j", where), where + ".j");
    if (i < 0 || jj < 0 || i >= n || jj >= n) throw InputError(where + ": index out of range");
    if (i > jj) throw InputError(where + ": only entries with i <= j may be given");
    Rational re = detail::rational_field(detail::field(e, "re", where), where + ".re");
    Rational im(0);
    if (e.contains("im")) im = detail::rational_field(e["im"], where + ".im");
    const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(jj);
    if (seen[ui * un + uj]) throw InputError(where + ": duplicate entry");
    seen[ui * un + uj] = true;
    if (ui == uj && !im.is_zero()) throw InputError(where + ": diagonal entry must be real");
    m.set(ui, uj, GaussianRational(std::move(re), std::move(im)));
  }
  return m;
}

inline HermitianWeightedMatrix parse_matrix(const std::string& text, const std::string& source = "input") {
  return matrix_from_json(detail::parse_text(text, source));
}

inline ordered_json matrix_to_json(const HermitianWeightedMatrix& m) {
  ordered_json entries = ordered_json::array();
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = i; j < m.order(); ++j)
      if (!m.at(i, j).is_zero())
        entries.push_back({{"i", i}, {"j", j}, {"re", m.at(i, j).re().str()}, {"im", m.at(i, j).im().str()}});
  return {{"n", m.order()}, {"entries", entries}};
}

// ---------------------------------------------------------------------------
// Polynomials, theta, results
// ---------------------------------------------------------------------------

inline ordered_json poly_to_json(const RationalPolynomial& p) {
  ordered_json a = ordered_json::array();
  for (const auto& c : p.coefficients()) a.push_back(c.str());
  if (p.is_zero()) a.push_back("0/1");
  return a;
}

inline RationalPolynomial poly_from_json(const json& j, const std::string& where = "polynomial") {
  if (!j.is_array()) throw InputError(where + ": expected an array of fraction strings");
  std::vector<Rational> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(detail::rational_field(j[i], where + "[" + std::to_string(i) + "]"));
  return RationalPolynomial(std::move(c));
}

inline ordered_json theta_to_json(const ThetaSpec& t) {
  if (t.is_rational()) return {{"kind", "rational"}, {"value", t.rational().str()}};
  const auto& a = t.algebraic_data();
  return {{"kind", "algebraic"}, {"min_poly", poly_to_json(a.min_poly)}, {"interval", {a.lo.str(), a.hi.str()}}};
}

inline ordered_json ids_json(const WeightedGraph& g, const std::vector<Vertex>& vs) {
  ordered_json a = ordered_json::array();
  for (Vertex v : vs) a.push_back(g.id(v));
  return a;
}

inline ordered_json decomposition_to_json(const WeightedGraph& g, const GEDecomposition& d) {
  ordered_json comps = ordered_json::array();
  for (const auto& c : d.critical_components) comps.push_back(ids_json(g, c));
  return {{"theta", theta_to_json(d.theta)}, {"mult", d.mult},     {"D", ids_json(g, d.D)},
          {"A", ids_json(g, d.A)},           {"P", ids_json(g, d.P)}, {"N", ids_json(g, d.N)},
          {"critical_components", comps}};
}

inline ordered_json parter_to_json(const WeightedGraph& t, const ParterResult& r) {
  if (const auto* miss = std::get_if<HypothesisNotMet>(&r))
    return {{"hypothesis_met", false}, {"mult", miss->mult}, {"reason", miss->reason}};
  const auto& rep = std::get<ParterReport>(r);
  ordered_json branches = ordered_json::array();
  for (const auto& b : rep.branches) branches.push_back({{"vertices", ids_json(t, b.vertices)}, {"mult", b.mult}});
  return {{"vertex", t.id(rep.vertex)},   {"degree", rep.degree}, {"mult_before", rep.mult_before},
          {"mult_after", rep.mult_after}, {"branches", branches}};
}

inline ordered_json path_tree_to_json(const WeightedGraph& g, const PathTree& pt) {
  ordered_json paths = ordered_json::object();
  for (std::size_t node = 0; node < pt.node_paths.size(); ++node)
    paths[pt.tree.id(node)] = ids_json(g, pt.node_paths[node]);
  return {{"tree", graph_to_json(pt.tree)}, {"root", pt.tree.id(pt.root)}, {"paths", paths}};
}

}  // namespace matchpoly::io
