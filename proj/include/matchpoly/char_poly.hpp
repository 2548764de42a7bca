#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "matchpoly/enumerate.hpp"
#include "matchpoly/errors.hpp"
#include "matchpoly/graph.hpp"
#include "matchpoly/matching_poly.hpp"
#include "matchpoly/polynomial.hpp"
#include "matchpoly/roots.hpp"

namespace matchpoly {

/// Dense Hermitian matrix over the Gaussian rationals.
class HermitianWeightedMatrix {
 public:
  HermitianWeightedMatrix() = default;
  explicit HermitianWeightedMatrix(std::size_t n) : n_(n), a_(n * n) {}

  /// Takes a full row-major n*n array and validates the Hermitian property.
  HermitianWeightedMatrix(std::size_t n, std::vector<GaussianRational> entries) : n_(n), a_(std::move(entries)) {
    if (a_.size() != n * n) throw InputError("matrix entry count differs from n*n");
    for (std::size_t i = 0; i < n; ++i) {
      if (!at(i, i).is_real())
        throw InputError("diagonal entry (" + std::to_string(i) + "," + std::to_string(i) + ") is not real");
      for (std::size_t j = i + 1; j < n; ++j)
        if (!(at(j, i) == at(i, j).conj()))
          throw InputError("entries (" + std::to_string(i) + "," + std::to_string(j) + ") and (" + std::to_string(j) +
                           "," + std::to_string(i) + ") are not conjugate");
    }
  }

  std::size_t order() const { return n_; }
  const GaussianRational& at(std::size_t i, std::size_t j) const { return a_.at(i * n_ + j); }

  /// Sets (i, j) and mirrors the conjugate into (j, i).
  void set(std::size_t i, std::size_t j, const GaussianRational& v) {
    if (i >= n_ || j >= n_) throw InputError("matrix index out of range");
    if (i == j && !v.is_real()) throw InputError("diagonal entry must be real");
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v.conj();
  }

  friend bool operator==(const HermitianWeightedMatrix&, const HermitianWeightedMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<GaussianRational> a_;
};

/// B(G): w(e_uv) above the diagonal, its conjugate below, w1 on the diagonal.
inline HermitianWeightedMatrix build_matrix(const WeightedGraph& g) {
  HermitianWeightedMatrix m(g.order());
  for (Vertex v = 0; v < g.order(); ++v) m.set(v, v, g.vertex_weight(v));
  for (const auto& e : g.edges()) m.set(e.u, e.v, e.w);
  return m;
}

/// Graph whose weighted adjacency matrix is m; vertex ids are "0", "1", ...
inline WeightedGraph graph_from_matrix(const HermitianWeightedMatrix& m) {
  const std::size_t n = m.order();
  std::vector<std::string> ids(n);
  std::vector<Rational> w1(n);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    ids[i] = std::to_string(i);
    w1[i] = m.at(i, i).re();
    for (std::size_t j = i + 1; j < n; ++j)
      if (!m.at(i, j).is_zero()) edges.push_back({i, j, m.at(i, j)});
  }
  return WeightedGraph(std::move(ids), std::move(w1), std::move(edges));
}

namespace detail {

/// Bareiss fraction-free elimination; a is consumed.
inline GaussianRational bareiss_determinant(std::vector<GaussianRational> a, std::size_t n) {
  if (n == 0) return GaussianRational(1);
  GaussianRational prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a[r * n + k].is_zero()) ++r;
      if (r == n) return GaussianRational(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[r * n + j]);
      negate = !negate;
    }
    const GaussianRational& piv = a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i * n + j] = (piv * a[i * n + j] - a[i * n + k] * a[k * n + j]) / prev;
      }
      a[i * n + k] = GaussianRational(0);
    }
    prev = piv;
  }
  GaussianRational d = a[n * n - 1];
  return negate ? -d : d;
}

inline std::vector<GaussianRational> shifted_entries(const HermitianWeightedMatrix& m, const Rational& x) {
  const std::size_t n = m.order();
  std::vector<GaussianRational> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = i == j ? GaussianRational(x) - m.at(i, j) : -m.at(i, j);
  return a;
}

/// 0, 1, -1, 2, -2, ...
inline Rational evaluation_point(std::size_t k) {
  long h = static_cast<long>((k + 1) / 2);
  return Rational(k % 2 == 1 ? h : -h);
}

/// Newton divided differences, then expansion into the monomial basis.
inline GaussianPolynomial interpolate(const std::vector<Rational>& xs, std::vector<GaussianRational> ys) {
  const std::size_t n = xs.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i)
      ys[i] = (ys[i] - ys[i - 1]) / GaussianRational(xs[i] - xs[i - level]);
  GaussianPolynomial p;
  for (std::size_t i = n; i-- > 0;) {
    p = p * GaussianPolynomial::linear_root(GaussianRational(xs[i])) + GaussianPolynomial::constant(ys[i]);
  }
  return p;
}

}  // namespace detail

/// det(m) by fraction-free elimination.
inline GaussianRational determinant(const HermitianWeightedMatrix& m) {
  return detail::bareiss_determinant(detail::shifted_entries(m, Rational(0)), m.order()) *
         GaussianRational(m.order() % 2 == 0 ? 1 : -1);
}

/// det(xI - m), exactly: n + 1 determinant evaluations, then interpolation.
inline RationalPolynomial charpoly(const HermitianWeightedMatrix& m, unsigned threads = 1) {
  const std::size_t n = m.order();
  if (n > kMaxMaskVertices) throw ResourceError("characteristic polynomial order", kMaxMaskVertices);
  std::vector<Rational> xs(n + 1);
  std::vector<GaussianRational> ys(n + 1);
  for (std::size_t k = 0; k <= n; ++k) xs[k] = detail::evaluation_point(k);
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t k = begin; k <= n; k += step) ys[k] = detail::bareiss_determinant(detail::shifted_entries(m, xs[k]), n);
  };
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, n + 1);
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
    for (auto& th : pool) th.join();
  }
  GaussianPolynomial gp = detail::interpolate(xs, std::move(ys));
  std::vector<Rational> re;
  for (const auto& c : gp.coefficients()) {
    if (!c.is_real()) throw InternalError("characteristic polynomial has a non-real coefficient");
    re.push_back(c.re());
  }
  return RationalPolynomial(std::move(re));
}

inline RationalPolynomial charpoly(const WeightedGraph& g, unsigned threads = 1) {
  return charpoly(build_matrix(g), threads);
}

/// Entry b_uv of B(G) for an edge.
inline GaussianRational oriented_weight(const WeightedGraph& g, Vertex u, Vertex v) {
  const GaussianRational& w = g.weight(u, v);
  return u < v ? w : w.conj();
}

/// w2(C) = b + conj(b), b the product of B-entries once around the cycle. The
/// traversal starts at the lowest vertex and heads to its lower-labelled cycle neighbour.
inline Rational w2_of_cycle(const WeightedGraph& g, const std::vector<Vertex>& cycle) {
  const std::size_t k = cycle.size();
  if (k < 3) throw InputError("a cycle needs at least 3 vertices");
  std::vector<Vertex> sorted(cycle);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InputError("cycle repeats a vertex");
  for (std::size_t i = 0; i < k; ++i) {
    Vertex a = cycle[i], b = cycle[(i + 1) % k];
    if (a >= g.order() || b >= g.order() || !g.has_edge(a, b)) throw InputError("vertex sequence is not a cycle of the graph");
  }
  std::size_t start = static_cast<std::size_t>(std::min_element(cycle.begin(), cycle.end()) - cycle.begin());
  bool forward = cycle[(start + 1) % k] < cycle[(start + k - 1) % k];
  GaussianRational b(1);
  for (std::size_t s = 0; s < k; ++s) {
    std::size_t i = forward ? (start + s) % k : (start + k - s) % k;
    std::size_t j = forward ? (i + 1) % k : (i + k - 1) % k;
    b *= oriented_weight(g, cycle[i], cycle[j]);
  }
  GaussianRational two_re = b + b.conj();
  if (!two_re.is_real()) throw InternalError("cycle weight has a non-zero imaginary part");
  return two_re.re();
}

inline Rational w2_of_cycle(const WeightedGraph& g, const Cycle& c) { return w2_of_cycle(g, c.vertices); }

inline Rational w2_of_union(const WeightedGraph& g, const CycleUnion& cu) {
  Rational r(1);
  for (const auto& c : cu.cycles) r *= w2_of_cycle(g, c);
  return r;
}

/// eta(G) + sum over cycle unions C of (-1)^comp(C) w2(C) eta(G \ C).
inline RationalPolynomial charpoly_via_eta(const WeightedGraph& g, const EnumerationLimits& lim = {}) {
  EtaMemo memo(g);
  const VertexMask all = memo.all();
  RationalPolynomial phi = memo(all);
  for_each_cycle_union(
      g,
      [&](const CycleUnion& cu) {
        Rational coef = w2_of_union(g, cu);
        if (cu.cycles.size() % 2 == 1) coef = -coef;
        phi += memo(all & ~cu.mask()) * coef;
      },
      lim);
  return phi;
}

/// With positive real edge weights, G is a forest exactly when phi = eta. Returns
/// whether that equivalence holds for g.
inline bool forest_iff_equal_check(const WeightedGraph& g) {
  for (const auto& e : g.edges())
    if (!e.w.is_real() || e.w.re().sign() <= 0)
      throw InputError("edge " + g.id(e.u) + "-" + g.id(e.v) + " does not have a positive real weight");
  bool equal = charpoly(g) == eta(g);
  return g.is_forest() == equal;
}

/// Outcome of the root-bound test for eta with w1 = 0.
struct RootBoundReport {
  Rational bound_squared;   // 4 b0^2 (Delta - 1)
  Rational rational_bound;  // r with r^2 >= bound_squared
  std::size_t outside_rational = 0;
  std::size_t outside_exact = 0;
  bool holds() const { return outside_rational == 0 && outside_exact == 0; }
};

namespace detail {

/// Distinct real roots of p strictly greater than t.
inline std::size_t roots_above(const RationalPolynomial& p, const Rational& t) {
  RationalPolynomial q = square_free_part(p);
  if (q.degree() < 1) return 0;
  Rational top = cauchy_root_bound(q) + Rational(1);
  if (t >= top) return 0;
  return sturm_half_open(sturm_chain(q), t, top);
}

/// Rational r >= sqrt(s), s >= 0.
inline Rational sqrt_upper(const Rational& s) {
  mpz_class num = s.numerator(), den = s.denominator();
  mpz_class prod = num * den, root;
  mpz_sqrt(root.get_mpz_t(), prod.get_mpz_t());
  if (root * root != prod) root += 1;
  return Rational(root, den);
}

}  // namespace detail

/// Checks that every real root of eta(g) lies in [-2 b0 sqrt(Delta-1), 2 b0 sqrt(Delta-1)]
/// for w1 = 0 and Delta >= 2. Counts roots outside a rational enclosure [-r, r] and,
/// exactly, roots x with x^2 > 4 b0^2 (Delta - 1) via p(x) = x^(n mod 2) h(x^2).
inline RootBoundReport root_bound_check(const WeightedGraph& g) {
  for (Rational w : g.vertex_weights())
    if (!w.is_zero()) throw InputError("root bound requires all vertex weights to be zero");
  const std::size_t delta = g.max_degree();
  if (delta < 2) throw InputError("root bound requires maximum degree at least 2");
  Rational b0sq(0);
  for (const auto& e : g.edges()) b0sq = std::max(b0sq, e.w.norm());
  RootBoundReport rep;
  rep.bound_squared = Rational(4) * b0sq * Rational(static_cast<long>(delta - 1));
  rep.rational_bound = detail::sqrt_upper(rep.bound_squared);
  RationalPolynomial p = eta(g);
  rep.outside_rational = detail::roots_above(p, rep.rational_bound) + detail::roots_above(p.reflect(), rep.rational_bound);
  // With w1 = 0 every term has the parity of n, so p(x) = x^(n mod 2) h(x^2).
  const auto c = p.coefficients();
  std::vector<Rational> h;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k % 2 == g.order() % 2) h.push_back(c[k]);
    else if (!c[k].is_zero()) throw InternalError("matching polynomial has a term of the wrong parity");
  }
  rep.outside_exact = detail::roots_above(RationalPolynomial(std::move(h)), rep.bound_squared);
  return rep;
}

}  // namespace matchpoly
