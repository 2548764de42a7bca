#pragma once

#include <cstddef>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "matchpoly/matchpoly.hpp"

namespace matchpoly::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kResourceError = 2, kInternalError = 3 };

struct Options {
  std::string command;
  std::string file;
  std::string which = "eta";
  std::string theta;
  std::string theta_minpoly;
  std::string interval;
  bool all_rational_roots = false;
  std::string root;
  bool matrix = false;
  std::size_t cap = kDefaultPathTreeCap;
  unsigned threads = 1;
  std::string out;
  std::string format = "json";
  std::string demo;
};

using io::ordered_json;

namespace detail {

inline std::vector<Rational> parse_rational_list(const std::string& s, const char* flag) {
  std::vector<Rational> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(Rational::parse(item));
    } catch (const InputError& e) {
      throw InputError(std::string(flag) + ": " + e.what());
    }
  }
  if (out.empty()) throw InputError(std::string(flag) + ": expected a comma-separated list of rationals");
  return out;
}

inline std::string join_ids(const WeightedGraph& g, const std::vector<Vertex>& vs) {
  std::string s;
  for (Vertex v : vs) s += (s.empty() ? "" : " ") + g.id(v);
  return s.empty() ? "-" : s;
}

inline std::string theta_text(const ThetaSpec& t) {
  if (t.is_rational()) return t.rational().pretty();
  const auto& a = t.algebraic_data();
  return "root of " + a.min_poly.pretty() + " in (" + a.lo.pretty() + ", " + a.hi.pretty() + ")";
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  int run() {
    if (o_.format != "json" && o_.format != "text") throw InputError("--format must be json or text");
    if (o_.which != "eta" && o_.which != "mu") throw InputError("--which must be eta or mu");
    std::ostringstream buf;
    int code = dispatch(buf);
    if (o_.out.empty()) {
      out_ << buf.str();
    } else {
      std::ofstream f(o_.out, std::ios::binary);
      if (!f) throw InputError("cannot write " + o_.out);
      f << buf.str();
    }
    return code;
  }

 private:
  int dispatch(std::ostream& os) {
    const std::string& c = o_.command;
    if (c.empty()) return cmd_demo(os);
    if (c == "poly") return cmd_poly(os);
    if (c == "charpoly") return cmd_charpoly(os);
    if (c == "decompose") return cmd_decompose(os);
    if (c == "pathtree") return cmd_pathtree(os);
    if (c == "deficiency") return cmd_deficiency(os);
    if (c == "parter") return cmd_parter(os);
    if (c == "check") return cmd_check(os);
    throw InputError("unknown command " + c);
  }

  bool json() const { return o_.format == "json"; }

  void emit(std::ostream& os, const ordered_json& j) { os << j.dump(2) << "\n"; }

  std::string read_input() const {
    if (o_.file.empty()) throw InputError("an input file (or --demo <name>) is required");
    return io::read_file(o_.file);
  }

  WeightedGraph load_graph() const {
    if (!o_.demo.empty()) {
      if (!o_.file.empty()) throw InputError("give either an input file or --demo, not both");
      return demo_graph(o_.demo);
    }
    return io::parse_graph(read_input(), o_.file);
  }

  HermitianWeightedMatrix load_matrix() const {
    if (o_.matrix) {
      if (!o_.demo.empty()) throw InputError("--demo names graphs; it cannot be combined with --matrix");
      return io::parse_matrix(read_input(), o_.file);
    }
    return build_matrix(load_graph());
  }

  EnumerationLimits limits() const { return {EnumerationLimits{}.max_vertices, o_.cap}; }

  /// The requested theta values; --all-rational-roots yields one per distinct rational
  /// root of poly, and reports irrational root intervals on stderr.
  std::vector<ThetaSpec> thetas(const RationalPolynomial& poly, bool& many) {
    int given = (!o_.theta.empty()) + (!o_.theta_minpoly.empty()) + (o_.all_rational_roots ? 1 : 0);
    if (given != 1) throw InputError("give exactly one of --theta, --theta-minpoly or --all-rational-roots");
    many = o_.all_rational_roots;
    if (!o_.theta.empty()) return {ThetaSpec(Rational::parse(o_.theta))};
    if (!o_.theta_minpoly.empty()) {
      if (o_.interval.empty()) throw InputError("--theta-minpoly requires --interval lo,hi");
      auto coeffs = parse_rational_list(o_.theta_minpoly, "--theta-minpoly");
      auto ends = parse_rational_list(o_.interval, "--interval");
      if (ends.size() != 2) throw InputError("--interval: expected exactly two rationals lo,hi");
      return {ThetaSpec::algebraic(RationalPolynomial(std::move(coeffs)), ends[0], ends[1])};
    }
    std::vector<ThetaSpec> out;
    auto rational = rational_roots(poly);
    for (const auto& r : rational) out.emplace_back(r);
    for (const auto& iv : isolate_real_roots(poly)) {
      if (iv.exact) continue;
      bool is_rational = false;
      for (const auto& r : rational) is_rational = is_rational || (iv.lo < r && r <= iv.hi);
      if (!is_rational)
        err_ << "irrational root candidate in (" << iv.lo.str() << ", " << iv.hi.str()
             << "]; supply --theta-minpoly with --interval to use it\n";
    }
    return out;
  }

  int cmd_demo(std::ostream& os) {
    if (o_.demo.empty()) throw InputError("a command is required");
    emit(os, io::graph_to_json(demo_graph(o_.demo)));
    return kOk;
  }

  int cmd_poly(std::ostream& os) {
    WeightedGraph g = load_graph();
    RationalPolynomial p = o_.which == "mu" ? mu(g) : eta(g);
    if (json()) emit(os, {{"which", o_.which}, {"coefficients", io::poly_to_json(p)}, {"pretty", p.pretty()}});
    else os << p.pretty() << "\n";
    return kOk;
  }

  int cmd_charpoly(std::ostream& os) {
    ordered_json ordering = ordered_json::array();
    HermitianWeightedMatrix m;
    if (o_.matrix) {
      m = load_matrix();
      for (std::size_t i = 0; i < m.order(); ++i) ordering.push_back(std::to_string(i));
    } else {
      WeightedGraph g = load_graph();
      m = build_matrix(g);
      for (Vertex v = 0; v < g.order(); ++v) ordering.push_back(g.id(v));
    }
    RationalPolynomial p = charpoly(m, o_.threads);
    if (json()) emit(os, {{"ordering", ordering}, {"coefficients", io::poly_to_json(p)}, {"pretty", p.pretty()}});
    else os << p.pretty() << "\n";
    return kOk;
  }

  void decomposition_text(std::ostream& os, const WeightedGraph& g, const GEDecomposition& d) {
    os << "theta: " << theta_text(d.theta) << "\n"
       << "mult: " << d.mult << "\n"
       << "D: " << join_ids(g, d.D) << "\n"
       << "A: " << join_ids(g, d.A) << "\n"
       << "P: " << join_ids(g, d.P) << "\n"
       << "N: " << join_ids(g, d.N) << "\n";
    for (const auto& c : d.critical_components) os << "critical: " << join_ids(g, c) << "\n";
  }

  int cmd_decompose(std::ostream& os) {
    WeightedGraph g = load_graph();
    bool many = false;
    auto ts = thetas(eta(g), many);
    ordered_json all = ordered_json::array();
    for (std::size_t i = 0; i < ts.size(); ++i) {
      GEDecomposition d = decompose(g, ts[i], {o_.threads});
      if (json()) {
        all.push_back(io::decomposition_to_json(g, d));
      } else {
        if (i) os << "\n";
        decomposition_text(os, g, d);
      }
    }
    if (json()) emit(os, many ? all : all.at(0));
    return kOk;
  }

  int cmd_pathtree(std::ostream& os) {
    WeightedGraph g = load_graph();
    if (o_.root.empty()) throw InputError("pathtree requires --root <vertex-id>");
    PathTree pt = build_path_tree(g, g.vertex_of(o_.root), o_.cap);
    if (json()) {
      emit(os, io::path_tree_to_json(g, pt));
    } else {
      os << "nodes: " << pt.tree.order() << "\n";
      for (std::size_t k = 0; k < pt.node_paths.size(); ++k) os << pt.tree.id(k) << ": " << join_ids(g, pt.node_paths[k]) << "\n";
    }
    return kOk;
  }

  int cmd_deficiency(std::ostream& os) {
    WeightedGraph g = load_graph();
    std::size_t d = deficiency(g);
    if (json()) emit(os, {{"deficiency", d}});
    else os << d << "\n";
    return kOk;
  }

  int cmd_parter(std::ostream& os) {
    // Vertex order is shared by the graph and its matrix, so graph ids label the report.
    WeightedGraph t = o_.matrix ? graph_from_matrix(load_matrix()) : load_graph();
    HermitianWeightedMatrix m = build_matrix(t);
    bool many = false;
    auto ts = thetas(eta(t), many);
    ordered_json all = ordered_json::array();
    for (std::size_t i = 0; i < ts.size(); ++i) {
      ParterResult r = parter_wiener_find(m, ts[i]);
      if (json()) {
        ordered_json j = io::parter_to_json(t, r);
        if (many) j = {{"theta", io::theta_to_json(ts[i])}, {"result", j}};
        all.push_back(j);
        continue;
      }
      if (i) os << "\n";
      os << "theta: " << theta_text(ts[i]) << "\n";
      if (const auto* miss = std::get_if<HypothesisNotMet>(&r)) {
        os << "hypothesis not met: " << miss->reason << "\n";
      } else {
        const auto& rep = std::get<ParterReport>(r);
        os << "vertex: " << t.id(rep.vertex) << " (degree " << rep.degree << ")\n"
           << "mult: " << rep.mult_before << " -> " << rep.mult_after << "\n";
        for (const auto& b : rep.branches) os << "branch: " << join_ids(t, b.vertices) << " (mult " << b.mult << ")\n";
      }
    }
    if (json()) emit(os, many ? all : all.at(0));
    return kOk;
  }

  struct CheckResult {
    std::string name;
    std::string status;  // pass, fail, cap
    std::string detail;
  };

  int cmd_check(std::ostream& os) {
    WeightedGraph g = load_graph();
    std::vector<CheckResult> results;
    auto run = [&](const std::string& name, const std::function<std::string()>& body) {
      try {
        std::string diff = body();
        results.push_back({name, diff.empty() ? "pass" : "fail", diff});
      } catch (const ResourceError& e) {
        results.push_back({name, "cap", e.what()});
      }
    };
    auto diff = [](const RationalPolynomial& lhs, const RationalPolynomial& rhs) -> std::string {
      if (lhs == rhs) return "";
      return "lhs - rhs = " + (lhs - rhs).pretty();
    };
    const EnumerationLimits lim = limits();
    const RationalPolynomial eg = eta(g);

    run("eta-subset-sum", [&] { return diff(eta_by_definition(g, lim), eg); });
    run("eta-matching-form", [&] { return diff(eta_matching_form(g, lim), eg); });
    run("charpoly-cycle-expansion", [&] { return diff(charpoly(g, o_.threads), charpoly_via_eta(g, lim)); });
    run("edge-recurrence", [&] {
      for (const auto& e : g.edges()) {
        RationalPolynomial rhs =
            eta(delete_edge(g, e.u, e.v)) - eta(delete_vertices(g, {e.u, e.v})) * e.w.norm();
        if (rhs != eg) return "edge " + g.id(e.u) + "-" + g.id(e.v) + ": " + diff(eg, rhs);
      }
      return std::string();
    });
    run("derivative-identity", [&] {
      RationalPolynomial rhs;
      for (Vertex v = 0; v < g.order(); ++v) rhs += eta(delete_vertices(g, {v}));
      return diff(eg.derivative(), rhs);
    });
    run("heilmann-lieb", [&] {
      for (Vertex u = 0; u < g.order(); ++u)
        for (Vertex v = u + 1; v < g.order(); ++v)
          if (!heilmann_lieb_check(g, u, v, lim)) return "pair " + g.id(u) + "," + g.id(v) + " differs";
      return std::string();
    });
    run("path-tree-ratio", [&] {
      for (Vertex u = 0; u < g.order(); ++u)
        if (!ratio_identity_check(g, u, o_.cap)) return "root " + g.id(u) + " differs";
      return std::string();
    });
    if (g.is_connected()) {
      run("path-tree-divisibility", [&] {
        for (Vertex u = 0; u < g.order(); ++u)
          if (!divisibility_check(g, u, o_.cap)) return "root " + g.id(u) + ": non-zero remainder";
        return std::string();
      });
    }
    run("real-rooted", [&] {
      std::size_t k = real_root_count_with_multiplicity(eg);
      return k == static_cast<std::size_t>(std::max(0L, eg.degree()))
                 ? std::string()
                 : std::to_string(k) + " real roots for degree " + std::to_string(eg.degree());
    });

    bool ok = true;
    for (const auto& r : results) ok = ok && r.status != "fail";
    if (json()) {
      ordered_json arr = ordered_json::array();
      for (const auto& r : results) {
        ordered_json j = {{"identity", r.name}, {"status", r.status}};
        if (!r.detail.empty()) j["detail"] = r.detail;
        arr.push_back(j);
      }
      emit(os, {{"passed", ok}, {"results", arr}});
    } else {
      for (const auto& r : results)
        os << r.status << " " << r.name << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
    }
    return ok ? kOk : kInternalError;
  }

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace detail

inline std::string usage() {
  return "usage: matchpoly poly|charpoly|decompose|pathtree|deficiency|parter|check <file> [flags]\n"
         "       matchpoly --demo <name>\n";
}

/// Parses args (without the program name) and runs one command. Returns the exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact weighted matching and characteristic polynomials", "matchpoly"};
  app.add_option("command", o.command, "poly|charpoly|decompose|pathtree|deficiency|parter|check");
  app.add_option("file", o.file, "graph file (or Hermitian matrix file with --matrix)");
  app.add_option("--which", o.which, "poly: eta (default) or mu");
  app.add_option("--theta", o.theta, "rational theta, p/q");
  app.add_option("--theta-minpoly", o.theta_minpoly, "minimal polynomial coefficients, low to high, comma separated");
  app.add_option("--interval", o.interval, "isolating interval lo,hi for --theta-minpoly");
  app.add_flag("--all-rational-roots", o.all_rational_roots, "use every rational root of the polynomial");
  app.add_option("--root", o.root, "pathtree: root vertex id");
  app.add_flag("--matrix", o.matrix, "input is a Hermitian matrix file");
  app.add_option("--cap", o.cap, "maximum number of enumerated objects (path-tree nodes, matchings, paths, cycle sets)");
  app.add_option("--threads", o.threads, "worker threads");
  app.add_option("--out", o.out, "write the result to this file");
  app.add_option("--format", o.format, "json (default) or text");
  app.add_option("--demo", o.demo, "use a built-in graph: " + [] {
    std::string s;
    for (const auto& n : demo_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }());

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help() << usage();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << usage();
    return kInputError;
  }

  try {
    return detail::Runner(o, out, err).run();
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResourceError;
  } catch (const InternalError& e) {
    err << "internal invariant violated: " << e.what() << "\n";
    return kInternalError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace matchpoly::cli
