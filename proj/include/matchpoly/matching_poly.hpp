#pragma once

#include <cstddef>
#include <unordered_map>
#include <utility>
#include <vector>

#include "matchpoly/enumerate.hpp"
#include "matchpoly/errors.hpp"
#include "matchpoly/graph.hpp"
#include "matchpoly/polynomial.hpp"

namespace matchpoly {

// ---------------------------------------------------------------------------
// Oracle routes: direct summations, no memoisation.
// ---------------------------------------------------------------------------

/// mu_w(G, x) = sum over matchings M of (-1)^|M| |w(M)|^2 x^(n - 2|M|).
inline RationalPolynomial mu_by_enumeration(const WeightedGraph& g, const EnumerationLimits& lim = {}) {
  const std::size_t n = g.order();
  std::vector<Rational> c(n + 1, Rational(0));
  for_each_matching(
      g,
      [&](const Matching& m) {
        Rational t = weight_norm(g, m);
        if (m.size() % 2 == 1) t = -t;
        c[n - 2 * m.size()] += t;
      },
      lim);
  return RationalPolynomial(std::move(c));
}

/// eta(G, x) = sum over S of (-1)^|V \ S| w1(G \ S) mu_w(H_G(S), x).
inline RationalPolynomial eta_by_definition(const WeightedGraph& g, const EnumerationLimits& lim = {}) {
  detail::check_vertex_cap(g, lim, "subset-sum definition");
  const std::size_t n = g.order();
  RationalPolynomial total;
  const VertexMask all = full_mask(n);
  for (VertexMask s = 0;; ++s) {
    VertexMask rest = all & ~s;
    Rational coef(1);
    for_each_bit(rest, [&](Vertex v) { coef *= g.vertex_weight(v); });
    if (popcount(rest) % 2 == 1) coef = -coef;
    if (!coef.is_zero()) {
      RationalPolynomial mu = s == 0 ? RationalPolynomial::constant(Rational(1))
                                     : mu_by_enumeration(induced_subgraph(g, s), lim);
      total += mu * coef;
    }
    if (s == all) break;
  }
  return total;
}

/// sum over matchings M of (-1)^|M| |w(M)|^2 prod_{u not in V(M)} (x - w1(u)).
inline RationalPolynomial eta_matching_form(const WeightedGraph& g, const EnumerationLimits& lim = {}) {
  RationalPolynomial total;
  const VertexMask all = full_mask(g.order());
  for_each_matching(
      g,
      [&](const Matching& m) {
        Rational t = weight_norm(g, m);
        if (m.size() % 2 == 1) t = -t;
        RationalPolynomial term = RationalPolynomial::constant(t);
        for_each_bit(all & ~m.covered(),
                     [&](Vertex u) { term *= RationalPolynomial::linear_root(g.vertex_weight(u)); });
        total += term;
      },
      lim);
  return total;
}

// ---------------------------------------------------------------------------
// Fast route: vertex recurrence memoised over vertex subsets.
// ---------------------------------------------------------------------------

/// Memo of eta (or mu, when vertex weights are ignored) for induced subgraphs of a
/// fixed graph with at most 64 vertices, keyed by vertex-subset bitmask.
/// Components are solved independently and multiplied. Not thread-safe; use one
/// instance per thread.
class EtaMemo {
 public:
  enum class Kind { Eta, Mu };

  explicit EtaMemo(const WeightedGraph& g, Kind kind = Kind::Eta) : n_(g.order()), kind_(kind) {
    g.require_mask_capacity();
    adj_.resize(n_);
    w1_.resize(n_);
    norm_.assign(n_ * n_, Rational(0));
    for (Vertex v = 0; v < n_; ++v) {
      adj_[v] = g.neighbour_mask(v);
      w1_[v] = kind == Kind::Eta ? g.vertex_weight(v) : Rational(0);
    }
    for (const auto& e : g.edges()) {
      norm_[e.u * n_ + e.v] = e.w.norm();
      norm_[e.v * n_ + e.u] = e.w.norm();
    }
    memo_.emplace(VertexMask{0}, RationalPolynomial::constant(Rational(1)));
  }

  std::size_t order() const { return n_; }
  VertexMask all() const { return full_mask(n_); }
  std::size_t size() const { return memo_.size(); }
  VertexMask neighbours(Vertex v) const { return adj_[v]; }

  /// Polynomial of the subgraph induced by s. The reference stays valid for the
  /// memo's lifetime.
  const RationalPolynomial& operator()(VertexMask s) {
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
    RationalPolynomial value = compute(s);
    return memo_.emplace(s, std::move(value)).first->second;
  }

  /// Connected components of the subgraph induced by s, ordered by smallest vertex.
  std::vector<VertexMask> components(VertexMask s) const {
    std::vector<VertexMask> out;
    while (s) {
      VertexMask comp = bit(lowest(s)), frontier = comp;
      while (frontier) {
        VertexMask next = 0;
        for_each_bit(frontier, [&](Vertex v) { next |= adj_[v]; });
        next &= s & ~comp;
        comp |= next;
        frontier = next;
      }
      out.push_back(comp);
      s &= ~comp;
    }
    return out;
  }

 private:
  RationalPolynomial compute(VertexMask s) {
    auto comps = components(s);
    if (comps.size() > 1) {
      RationalPolynomial prod = RationalPolynomial::constant(Rational(1));
      for (VertexMask c : comps) prod *= (*this)(c);
      return prod;
    }
    // Pivot: lowest-labelled vertex of maximum degree inside s.
    Vertex pivot = lowest(s);
    std::size_t best = 0;
    for_each_bit(s, [&](Vertex v) {
      std::size_t d = popcount(adj_[v] & s);
      if (d > best) {
        best = d;
        pivot = v;
      }
    });
    VertexMask rest = s & ~bit(pivot);
    RationalPolynomial result = RationalPolynomial::linear_root(w1_[pivot]) * (*this)(rest);
    for_each_bit(adj_[pivot] & s, [&](Vertex v) {
      result -= (*this)(rest & ~bit(v)) * norm_[pivot * n_ + v];
    });
    return result;
  }

  std::size_t n_;
  Kind kind_;
  std::vector<VertexMask> adj_;
  std::vector<Rational> w1_;
  std::vector<Rational> norm_;
  std::unordered_map<VertexMask, RationalPolynomial> memo_;
};

/// mu_w by the vertex recurrence mu(G) = x mu(G\u) - sum |w(e_uv)|^2 mu(G\uv).
inline RationalPolynomial mu_by_recurrence(const WeightedGraph& g) {
  EtaMemo memo(g, EtaMemo::Kind::Mu);
  return memo(memo.all());
}

/// eta by eta(G) = (x - w1(u)) eta(G\u) - sum |w(e_uv)|^2 eta(G\uv).
inline RationalPolynomial eta_by_recurrence(const WeightedGraph& g) {
  EtaMemo memo(g);
  return memo(memo.all());
}

/// eta of a forest of any size, by dynamic programming over rooted subtrees.
inline RationalPolynomial eta_forest(const WeightedGraph& g, bool use_vertex_weights = true) {
  if (!g.is_forest()) throw InputError("eta_forest requires a forest");
  const std::size_t n = g.order();
  // full[v] = eta(subtree of v); without[v] = eta(subtree of v minus v).
  std::vector<RationalPolynomial> full(n), without(n);
  std::vector<long> parent(n, -2);
  std::vector<Vertex> order;
  order.reserve(n);
  for (Vertex r = 0; r < n; ++r) {
    if (parent[r] != -2) continue;
    parent[r] = -1;
    std::vector<Vertex> stack{r};
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (Vertex c : g.neighbours(v))
        if (parent[c] == -2) {
          parent[c] = static_cast<long>(v);
          stack.push_back(c);
        }
    }
  }
  RationalPolynomial result = RationalPolynomial::constant(Rational(1));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Vertex v = *it;
    std::vector<Vertex> kids;
    for (Vertex c : g.neighbours(v))
      if (parent[c] == static_cast<long>(v)) kids.push_back(c);
    // prefix/suffix products of children's full polynomials
    const std::size_t k = kids.size();
    std::vector<RationalPolynomial> pre(k + 1), suf(k + 1);
    pre[0] = suf[k] = RationalPolynomial::constant(Rational(1));
    for (std::size_t i = 0; i < k; ++i) pre[i + 1] = pre[i] * full[kids[i]];
    for (std::size_t i = k; i-- > 0;) suf[i] = suf[i + 1] * full[kids[i]];
    without[v] = pre[k];
    Rational w1 = use_vertex_weights ? g.vertex_weight(v) : Rational(0);
    RationalPolynomial f = RationalPolynomial::linear_root(w1) * pre[k];
    for (std::size_t i = 0; i < k; ++i)
      f -= without[kids[i]] * (pre[i] * suf[i + 1]) * g.weight(v, kids[i]).norm();
    full[v] = std::move(f);
    for (Vertex c : kids) {
      full[c] = {};
      without[c] = {};
    }
    if (parent[v] == -1) result *= full[v];
  }
  return result;
}

/// eta by the fastest applicable route: forest DP for forests of any size, the
/// subset memo otherwise (at most 64 vertices).
inline RationalPolynomial eta(const WeightedGraph& g) {
  if (g.is_forest()) return eta_forest(g);
  return eta_by_recurrence(g);
}

inline RationalPolynomial mu(const WeightedGraph& g) {
  if (g.is_forest()) return eta_forest(g, false);
  return mu_by_recurrence(g);
}

/// d/dx eta(G) == sum over v of eta(G \ v), checked exactly.
inline bool derivative_identity_check(const WeightedGraph& g) {
  EtaMemo memo(g);
  RationalPolynomial lhs = memo(memo.all()).derivative(), rhs;
  for (Vertex v = 0; v < g.order(); ++v) rhs += memo(memo.all() & ~bit(v));
  return lhs == rhs;
}

/// eta(G) == eta(G - e) - |w(e)|^2 eta(G \ uv), checked for every edge.
inline bool edge_recurrence_check(const WeightedGraph& g) {
  EtaMemo memo(g);
  const RationalPolynomial& whole = memo(memo.all());
  for (const auto& e : g.edges()) {
    RationalPolynomial without_edge = eta_by_recurrence(delete_edge(g, e.u, e.v));
    RationalPolynomial rhs = without_edge - memo(memo.all() & ~bit(e.u) & ~bit(e.v)) * e.w.norm();
    if (!(rhs == whole)) return false;
  }
  return true;
}

}  // namespace matchpoly
