#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "matchpoly/char_poly.hpp"
#include "matchpoly/enumerate.hpp"
#include "matchpoly/errors.hpp"
#include "matchpoly/graph.hpp"
#include "matchpoly/matching_poly.hpp"
#include "matchpoly/roots.hpp"

namespace matchpoly {

enum class VertexKind { Essential, Neutral, Positive };

inline const char* to_string(VertexKind k) {
  switch (k) {
    case VertexKind::Essential: return "essential";
    case VertexKind::Neutral: return "neutral";
    case VertexKind::Positive: return "positive";
  }
  return "?";
}

struct VertexClass {
  VertexKind kind = VertexKind::Neutral;
  bool special = false;
  friend bool operator==(const VertexClass&, const VertexClass&) = default;
};

/// Multiplicity of a fixed theta in eta of induced subgraphs, cached per subset.
class MultiplicityOracle {
 public:
  MultiplicityOracle(const WeightedGraph& g, ThetaSpec theta, EtaMemo::Kind kind = EtaMemo::Kind::Eta)
      : memo_(g, kind), theta_(std::move(theta)) {}

  std::size_t operator()(VertexMask s) {
    auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;
    std::size_t m = theta_.multiplicity_in(memo_(s));
    cache_.emplace(s, m);
    return m;
  }

  VertexMask all() const { return memo_.all(); }
  const ThetaSpec& theta() const { return theta_; }
  EtaMemo& memo() { return memo_; }

 private:
  EtaMemo memo_;
  ThetaSpec theta_;
  std::unordered_map<VertexMask, std::size_t> cache_;
};

/// mult(theta, G, eta).
inline std::size_t multiplicity(const WeightedGraph& g, const ThetaSpec& theta) {
  return theta.multiplicity_in(eta(g));
}

namespace detail {

/// mult(G \ u) - mult(G) for u in s, checked against interlacing.
inline long deletion_delta(MultiplicityOracle& mo, VertexMask s, Vertex u) {
  long d = static_cast<long>(mo(s & ~bit(u))) - static_cast<long>(mo(s));
  if (d < -1 || d > 1)
    throw InternalError("interlacing violated: deleting vertex " + std::to_string(u) + " changes multiplicity by " +
                        std::to_string(d));
  return d;
}

inline VertexKind kind_of(long delta) {
  return delta < 0 ? VertexKind::Essential : (delta == 0 ? VertexKind::Neutral : VertexKind::Positive);
}

}  // namespace detail

/// Class of u: essential, neutral or positive, plus the special flag.
inline VertexClass classify_vertex(const WeightedGraph& g, const ThetaSpec& theta, Vertex u) {
  if (u >= g.order()) throw InputError("vertex out of range");
  MultiplicityOracle mo(g, theta);
  VertexClass c{detail::kind_of(detail::deletion_delta(mo, mo.all(), u)), false};
  if (c.kind != VertexKind::Essential)
    for (Vertex v : g.neighbours(u))
      if (detail::deletion_delta(mo, mo.all(), v) < 0) {
        c.special = true;
        break;
      }
  return c;
}

/// D (essential), A (special), P (positive, not special), N (neutral) and the
/// components of G \ A that lie inside D.
struct GEDecomposition {
  ThetaSpec theta{0};
  std::size_t mult = 0;
  std::vector<VertexClass> classes;
  std::vector<Vertex> D, A, P, N;
  std::vector<std::vector<Vertex>> critical_components;
};

struct DecomposeOptions {
  unsigned threads = 1;
};

namespace detail {

inline VertexMask to_mask(const std::vector<Vertex>& vs) {
  VertexMask m = 0;
  for (Vertex v : vs) m |= bit(v);
  return m;
}

inline void verify_decomposition(const WeightedGraph& g, const GEDecomposition& d, MultiplicityOracle& mo) {
  auto fail = [](const std::string& what) { throw InternalError("decomposition invariant violated: " + what); };
  const VertexMask all = mo.all();
  VertexMask dm = to_mask(d.D), am = to_mask(d.A), pm = to_mask(d.P), nm = to_mask(d.N);
  if ((dm & am) || (dm & pm) || (dm & nm) || (am & pm) || (am & nm) || (pm & nm)) fail("classes overlap");
  if ((dm | am | pm | nm) != all) fail("classes do not cover the vertex set");
  for (Vertex v : d.A)
    if (d.classes[v].kind != VertexKind::Positive) fail("special vertex " + g.id(v) + " is not positive");
  if (d.mult >= 1 && d.D.empty()) fail("positive multiplicity without an essential vertex");
  if (d.critical_components.size() != d.A.size() + d.mult)
    fail(std::to_string(d.critical_components.size()) + " critical components, expected |A| + mult = " +
         std::to_string(d.A.size() + d.mult));
  VertexMask covered = 0;
  for (const auto& comp : d.critical_components) {
    VertexMask cm = to_mask(comp);
    covered |= cm;
    if (mo(cm) != 1) fail("critical component containing " + g.id(comp.front()) + " does not have multiplicity 1");
    for (Vertex v : comp)
      if (detail::deletion_delta(mo, cm, v) != -1)
        fail("vertex " + g.id(v) + " is not essential inside its critical component");
  }
  if (covered != dm) fail("critical components do not cover D");
  if (mo(all & ~dm & ~am) != 0) fail("components of G \\ A outside D carry the root");
}

}  // namespace detail

/// Full decomposition of g at theta; all structural invariants are verified
/// before returning and a violation raises InternalError.
inline GEDecomposition decompose(const WeightedGraph& g, const ThetaSpec& theta, const DecomposeOptions& opt = {}) {
  MultiplicityOracle mo(g, theta);
  const std::size_t n = g.order();
  const VertexMask all = mo.all();
  GEDecomposition d;
  d.theta = theta;
  d.mult = mo(all);
  std::vector<long> delta(n, 0);
  const std::size_t workers = std::clamp<std::size_t>(opt.threads, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (Vertex u = 0; u < n; ++u) delta[u] = detail::deletion_delta(mo, all, u);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t t = 0; t < workers; ++t)
      pool.emplace_back([&, t] {
        try {
          MultiplicityOracle local(g, theta);
          for (Vertex u = t; u < n; u += workers) delta[u] = detail::deletion_delta(local, all, u);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  d.classes.resize(n);
  for (Vertex u = 0; u < n; ++u) d.classes[u].kind = detail::kind_of(delta[u]);
  for (Vertex u = 0; u < n; ++u) {
    if (d.classes[u].kind == VertexKind::Essential) continue;
    for (Vertex v : g.neighbours(u))
      if (d.classes[v].kind == VertexKind::Essential) d.classes[u].special = true;
  }
  for (Vertex u = 0; u < n; ++u) {
    const auto& c = d.classes[u];
    if (c.kind == VertexKind::Essential) d.D.push_back(u);
    else if (c.special) d.A.push_back(u);
    else if (c.kind == VertexKind::Positive) d.P.push_back(u);
    else d.N.push_back(u);
  }
  const VertexMask dm = detail::to_mask(d.D);
  for (VertexMask comp : mo.memo().components(all & ~detail::to_mask(d.A)))
    if ((comp & ~dm) == 0) d.critical_components.push_back(mask_to_vertices(comp));
  detail::verify_decomposition(g, d, mo);
  return d;
}

/// True iff deleting the path drops the multiplicity by one.
inline bool essential_path_check(const WeightedGraph& g, const ThetaSpec& theta, const std::vector<Vertex>& path) {
  if (path.size() < 2) throw InputError("essential path check needs a path of length at least 1");
  VertexMask pm = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] >= g.order()) throw InputError("path vertex out of range");
    if (pm & bit(path[i])) throw InputError("path repeats a vertex");
    if (i > 0 && !g.has_edge(path[i - 1], path[i])) throw InputError("consecutive path vertices are not adjacent");
    pm |= bit(path[i]);
  }
  MultiplicityOracle mo(g, theta);
  long before = static_cast<long>(mo(mo.all())), after = static_cast<long>(mo(mo.all() & ~pm));
  if (after < before - 1) throw InternalError("path interlacing violated");
  return after == before - 1;
}

namespace detail {

inline std::vector<std::string> ids_of(const WeightedGraph& g, const std::vector<Vertex>& vs) {
  std::vector<std::string> out;
  for (Vertex v : vs) out.push_back(g.id(v));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// For every special vertex u, the decomposition of G \ u keeps D, P and N and has
/// A \ {u} as its special set. Vacuously true when A is empty.
inline bool stability_check(const WeightedGraph& g, const ThetaSpec& theta) {
  GEDecomposition d = decompose(g, theta);
  auto Dn = detail::ids_of(g, d.D), Pn = detail::ids_of(g, d.P), Nn = detail::ids_of(g, d.N);
  for (Vertex u : d.A) {
    WeightedGraph h = delete_vertices(g, {u});
    GEDecomposition e = decompose(h, theta);
    std::vector<Vertex> rest;
    for (Vertex a : d.A)
      if (a != u) rest.push_back(a);
    if (detail::ids_of(h, e.D) != Dn || detail::ids_of(h, e.P) != Pn || detail::ids_of(h, e.N) != Nn ||
        detail::ids_of(h, e.A) != detail::ids_of(g, rest))
      return false;
  }
  return true;
}

/// For connected g: if every vertex is essential then mult = 1 (a violation raises
/// InternalError). Returns whether the premise held.
inline bool gallai_lemma_check(const WeightedGraph& g, const ThetaSpec& theta) {
  if (!g.is_connected()) throw InputError("critical-graph check requires a connected graph");
  MultiplicityOracle mo(g, theta);
  for (Vertex u = 0; u < g.order(); ++u)
    if (detail::deletion_delta(mo, mo.all(), u) != -1) return false;
  if (mo(mo.all()) != 1) throw InternalError("every vertex essential but multiplicity is " + std::to_string(mo(mo.all())));
  return true;
}

/// Number of vertices missed by a maximum matching, as mult(0, mu_w).
inline std::size_t deficiency(const WeightedGraph& g) { return multiplicity_of_rational_root(mu(g), Rational(0)); }

/// decompose(g, c) for w1 = c on every vertex; additionally asserts N is empty and
/// the multiplicity equals the deficiency.
inline GEDecomposition classical_decomposition(const WeightedGraph& g, const Rational& c) {
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.vertex_weight(v) != c)
      throw InputError("vertex " + g.id(v) + " has weight " + g.vertex_weight(v).str() + ", expected " + c.str());
  GEDecomposition d = decompose(g, ThetaSpec(c));
  if (!d.N.empty()) throw InternalError("classical decomposition has neutral vertices");
  if (d.mult != deficiency(g)) throw InternalError("multiplicity at the constant weight differs from the deficiency");
  return d;
}

/// eta(G\u) eta(G\v) - eta(G) eta(G\uv) == sum over u-v paths p of |w(p)|^2 eta(G\p)^2.
inline bool heilmann_lieb_check(const WeightedGraph& g, Vertex u, Vertex v, const EnumerationLimits& lim = {}) {
  EtaMemo memo(g);
  const VertexMask all = memo.all();
  RationalPolynomial lhs =
      memo(all & ~bit(u)) * memo(all & ~bit(v)) - memo(all) * memo(all & ~bit(u) & ~bit(v));
  RationalPolynomial rhs;
  for_each_path_between(
      g, u, v,
      [&](const Path& p) {
        const RationalPolynomial& rest = memo(all & ~p.mask());
        rhs += rest * rest * path_weight(g, p).norm();
      },
      lim);
  return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Parter vertices of Hermitian tree matrices
// ---------------------------------------------------------------------------

struct ParterBranch {
  std::vector<Vertex> vertices;
  std::size_t mult = 0;
};

struct ParterReport {
  Vertex vertex = 0;
  std::size_t degree = 0;
  std::size_t mult_before = 0;
  std::size_t mult_after = 0;
  std::vector<ParterBranch> branches;  // components of T \ vertex carrying theta
};

struct HypothesisNotMet {
  std::size_t mult = 0;
  std::string reason;
};

using ParterResult = std::variant<ParterReport, HypothesisNotMet>;

/// For a Hermitian matrix whose graph is a tree and theta an eigenvalue that is
/// also an eigenvalue of some principal submatrix B(u;u), finds a vertex v with
/// mult(T \ v) = mult(T) + 1. With mult >= 2 the vertex has degree >= 3 and at least
/// three branches carry theta; with mult = 1 it has degree >= 2 and two branches of
/// multiplicity 1. Vertices are tried by decreasing degree, ties by label.
inline ParterResult parter_wiener_find(const HermitianWeightedMatrix& m, const ThetaSpec& theta) {
  WeightedGraph t = graph_from_matrix(m);
  if (!(t.is_connected() && t.is_forest())) throw InputError("the graph of the matrix is not a tree");
  MultiplicityOracle mo(t, theta);
  const VertexMask all = mo.all();
  const std::size_t k = mo(all);
  if (k == 0) return HypothesisNotMet{0, "theta is not an eigenvalue"};
  if (k == 1) {
    bool any_non_essential = false;
    for (Vertex u = 0; u < t.order() && !any_non_essential; ++u)
      any_non_essential = detail::deletion_delta(mo, all, u) >= 0;
    if (!any_non_essential)
      return HypothesisNotMet{1, "multiplicity 1 and every vertex is essential"};
  }
  std::vector<Vertex> order(t.order());
  for (Vertex v = 0; v < t.order(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return t.degree(a) > t.degree(b); });
  const std::size_t need_degree = k >= 2 ? 3 : 2;
  const std::size_t need_branches = k >= 2 ? 3 : 2;
  for (Vertex v : order) {
    if (t.degree(v) < need_degree) break;
    const VertexMask rest = all & ~bit(v);
    if (mo(rest) != k + 1) continue;
    ParterReport rep{v, t.degree(v), k, k + 1, {}};
    for (VertexMask comp : mo.memo().components(rest)) {
      std::size_t cm = mo(comp);
      if (k >= 2 ? cm >= 1 : cm == 1) rep.branches.push_back({mask_to_vertices(comp), cm});
    }
    if (rep.branches.size() >= need_branches) return rep;
  }
  throw InternalError("no qualifying Parter vertex found although the hypothesis holds");
}

}  // namespace matchpoly
