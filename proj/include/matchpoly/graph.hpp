#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "matchpoly/errors.hpp"
#include "matchpoly/rational.hpp"

namespace matchpoly {

using Vertex = std::size_t;

/// Subset of the vertices of a graph with at most 64 vertices.
using VertexMask = std::uint64_t;

inline constexpr std::size_t kMaxMaskVertices = 64;

inline VertexMask bit(Vertex v) { return VertexMask{1} << v; }
inline VertexMask full_mask(std::size_t n) { return n >= 64 ? ~VertexMask{0} : (bit(n) - 1); }
inline std::size_t popcount(VertexMask m) { return static_cast<std::size_t>(std::popcount(m)); }
inline Vertex lowest(VertexMask m) { return static_cast<Vertex>(std::countr_zero(m)); }

template <typename F>
void for_each_bit(VertexMask m, F&& f) {
  while (m) {
    f(lowest(m));
    m &= m - 1;
  }
}

inline std::vector<Vertex> mask_to_vertices(VertexMask m) {
  std::vector<Vertex> out;
  for_each_bit(m, [&](Vertex v) { out.push_back(v); });
  return out;
}

struct Edge {
  Vertex u;  ///< u < v
  Vertex v;
  GaussianRational w;
};

/// Simple graph on the ordered vertices 0..n-1 with non-zero Gaussian-rational
/// edge weights and rational vertex weights. Each vertex carries an external id.
/// Immutable; every modifying operation returns a new graph.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Unnamed vertices get ids "0", "1", ...
  explicit WeightedGraph(std::size_t n) : ids_(n), w1_(n, Rational(0)), nbrs_(n) {
    for (std::size_t i = 0; i < n; ++i) ids_[i] = std::to_string(i);
    rebuild_index();
  }

  WeightedGraph(std::vector<std::string> ids, std::vector<Rational> vertex_weights,
                std::vector<Edge> edges)
      : ids_(std::move(ids)), w1_(std::move(vertex_weights)), nbrs_(ids_.size()) {
    if (w1_.size() != ids_.size()) throw InputError("vertex weight count differs from vertex count");
    rebuild_index();
    for (auto& e : edges) add_edge_unchecked_order(e.u, e.v, std::move(e.w));
    finish_edges();
  }

  std::size_t order() const { return ids_.size(); }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return ids_.empty(); }

  std::span<const Edge> edges() const { return edges_; }
  const std::string& id(Vertex v) const { return ids_.at(v); }
  std::span<const std::string> ids() const { return ids_; }
  const Rational& vertex_weight(Vertex v) const { return w1_.at(v); }
  std::span<const Rational> vertex_weights() const { return w1_; }

  std::optional<Vertex> find(const std::string& id) const {
    auto it = id_index_.find(id);
    if (it == id_index_.end()) return std::nullopt;
    return it->second;
  }
  Vertex vertex_of(const std::string& id) const {
    auto v = find(id);
    if (!v) throw InputError("unknown vertex \"" + id + "\"");
    return *v;
  }

  /// Neighbours of v in increasing label order.
  std::span<const Vertex> neighbours(Vertex v) const { return nbrs_.at(v); }
  std::size_t degree(Vertex v) const { return nbrs_.at(v).size(); }
  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& n : nbrs_) d = std::max(d, n.size());
    return d;
  }

  bool has_edge(Vertex u, Vertex v) const { return edge_index(u, v).has_value(); }
  /// w(e_uv), the same value whichever endpoint comes first.
  const GaussianRational& weight(Vertex u, Vertex v) const {
    auto i = edge_index(u, v);
    if (!i) throw InputError("no edge between " + id_or_index(u) + " and " + id_or_index(v));
    return edges_[*i].w;
  }

  /// Adjacency of v as a bitmask; requires order() <= 64.
  VertexMask neighbour_mask(Vertex v) const {
    require_mask_capacity();
    VertexMask m = 0;
    for (Vertex u : nbrs_.at(v)) m |= bit(u);
    return m;
  }

  void require_mask_capacity() const {
    if (order() > kMaxMaskVertices)
      throw ResourceError("graph has " + std::to_string(order()) + " vertices; subset operations", kMaxMaskVertices);
  }

  bool is_forest() const;
  bool is_connected() const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    if (a.ids_ != b.ids_ || a.w1_ != b.w1_ || a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i) {
      const auto &x = a.edges_[i], &y = b.edges_[i];
      if (x.u != y.u || x.v != y.v || !(x.w == y.w)) return false;
    }
    return true;
  }

 private:
  friend class GraphBuilder;

  std::string id_or_index(Vertex v) const { return v < ids_.size() ? "\"" + ids_[v] + "\"" : std::to_string(v); }

  void rebuild_index() {
    id_index_.clear();
    for (std::size_t i = 0; i < ids_.size(); ++i)
      if (!id_index_.emplace(ids_[i], i).second) throw InputError("duplicate vertex id \"" + ids_[i] + "\"");
  }

  void add_edge_unchecked_order(Vertex u, Vertex v, GaussianRational w) {
    if (u >= order() || v >= order()) throw InputError("edge endpoint out of range");
    if (u == v) throw InputError("loop at vertex " + id_or_index(u) + " is not allowed");
    if (w.is_zero())
      throw InputError("edge " + id_or_index(u) + "-" + id_or_index(v) + " has zero weight");
    if (u > v) std::swap(u, v);
    edges_.push_back({u, v, std::move(w)});
  }

  void finish_edges() {
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
    for (std::size_t i = 1; i < edges_.size(); ++i)
      if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
        throw InputError("duplicate edge " + id_or_index(edges_[i].u) + "-" + id_or_index(edges_[i].v));
    for (auto& n : nbrs_) n.clear();
    for (const auto& e : edges_) {
      nbrs_[e.u].push_back(e.v);
      nbrs_[e.v].push_back(e.u);
    }
    for (auto& n : nbrs_) std::sort(n.begin(), n.end());
  }

  std::optional<std::size_t> edge_index(Vertex u, Vertex v) const {
    if (u == v || u >= order() || v >= order()) return std::nullopt;
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair(u, v),
                               [](const Edge& e, const std::pair<Vertex, Vertex>& key) {
                                 return std::pair(e.u, e.v) < key;
                               });
    if (it == edges_.end() || it->u != u || it->v != v) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }

  std::vector<std::string> ids_;
  std::vector<Rational> w1_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> nbrs_;
  std::unordered_map<std::string, Vertex> id_index_;
};

/// Incremental construction by id, used by parsers, generators and tests.
class GraphBuilder {
 public:
  Vertex add_vertex(std::string id, Rational w1 = Rational(0)) {
    if (index_.count(id)) throw InputError("duplicate vertex id \"" + id + "\"");
    index_.emplace(id, ids_.size());
    ids_.push_back(std::move(id));
    w1_.push_back(std::move(w1));
    return ids_.size() - 1;
  }
  void add_edge(Vertex u, Vertex v, GaussianRational w) { edges_.push_back({u, v, std::move(w)}); }
  void add_edge(const std::string& u, const std::string& v, GaussianRational w) {
    add_edge(lookup(u), lookup(v), std::move(w));
  }
  Vertex lookup(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw InputError("unknown vertex \"" + id + "\"");
    return it->second;
  }
  std::size_t order() const { return ids_.size(); }

  WeightedGraph build() const { return WeightedGraph(ids_, w1_, edges_); }

 private:
  std::vector<std::string> ids_;
  std::vector<Rational> w1_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, Vertex> index_;
};

namespace detail {

inline std::vector<std::vector<Vertex>> component_lists(const WeightedGraph& g) {
  const std::size_t n = g.order();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<Vertex> members{s}, stack{s};
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex u : g.neighbours(v))
        if (comp[u] < 0) {
          comp[u] = comp[s];
          members.push_back(u);
          stack.push_back(u);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

}  // namespace detail

inline bool WeightedGraph::is_forest() const {
  return edges_.size() + detail::component_lists(*this).size() == order();
}

inline bool WeightedGraph::is_connected() const {
  return order() > 0 && detail::component_lists(*this).size() == 1;
}

/// Subgraph induced by the given vertices, survivors keeping their relative order.
inline WeightedGraph induced_subgraph(const WeightedGraph& g, const std::vector<Vertex>& keep_sorted) {
  std::vector<long> map(g.order(), -1);
  std::vector<std::string> ids;
  std::vector<Rational> w1;
  for (Vertex v : keep_sorted) {
    if (v >= g.order()) throw InputError("vertex index " + std::to_string(v) + " out of range");
    map[v] = static_cast<long>(ids.size());
    ids.push_back(g.id(v));
    w1.push_back(g.vertex_weight(v));
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (map[e.u] >= 0 && map[e.v] >= 0)
      edges.push_back({static_cast<Vertex>(map[e.u]), static_cast<Vertex>(map[e.v]), e.w});
  return WeightedGraph(std::move(ids), std::move(w1), std::move(edges));
}

/// G \ S with induced weights.
inline WeightedGraph delete_vertices(const WeightedGraph& g, std::span<const Vertex> s) {
  std::vector<bool> drop(g.order(), false);
  for (Vertex v : s) {
    if (v >= g.order()) throw InputError("cannot delete unknown vertex index " + std::to_string(v));
    drop[v] = true;
  }
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.order(); ++v)
    if (!drop[v]) keep.push_back(v);
  return induced_subgraph(g, keep);
}

inline WeightedGraph delete_vertices(const WeightedGraph& g, std::initializer_list<Vertex> s) {
  return delete_vertices(g, std::span<const Vertex>(s.begin(), s.size()));
}

inline WeightedGraph delete_vertices(const WeightedGraph& g, const std::vector<std::string>& ids) {
  std::vector<Vertex> s;
  for (const auto& id : ids) s.push_back(g.vertex_of(id));
  return delete_vertices(g, s);
}

/// Subgraph induced by a mask; requires order() <= 64.
inline WeightedGraph induced_subgraph(const WeightedGraph& g, VertexMask keep) {
  g.require_mask_capacity();
  return induced_subgraph(g, mask_to_vertices(keep & full_mask(g.order())));
}

/// G - e_uv; the vertex set is unchanged.
inline WeightedGraph delete_edge(const WeightedGraph& g, Vertex u, Vertex v) {
  if (!g.has_edge(u, v)) throw InputError("cannot delete missing edge " + std::to_string(u) + "-" + std::to_string(v));
  if (u > v) std::swap(u, v);
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (!(e.u == u && e.v == v)) edges.push_back(e);
  return WeightedGraph({g.ids().begin(), g.ids().end()}, {g.vertex_weights().begin(), g.vertex_weights().end()},
                       std::move(edges));
}

/// Connected components with induced weights, ordered by smallest vertex label.
inline std::vector<WeightedGraph> components(const WeightedGraph& g) {
  std::vector<WeightedGraph> out;
  for (const auto& c : detail::component_lists(g)) out.push_back(induced_subgraph(g, c));
  return out;
}

/// Relabelling: vertex v of g becomes vertex sigma[v] of the result, keeping its id,
/// vertex weight and incident edge weights. The result is weight-isomorphic to g.
inline WeightedGraph permute(const WeightedGraph& g, std::span<const Vertex> sigma) {
  const std::size_t n = g.order();
  if (sigma.size() != n) throw InputError("permutation size differs from vertex count");
  std::vector<bool> seen(n, false);
  for (Vertex t : sigma) {
    if (t >= n || seen[t]) throw InputError("relabelling is not a bijection");
    seen[t] = true;
  }
  std::vector<std::string> ids(n);
  std::vector<Rational> w1(n);
  for (Vertex v = 0; v < n; ++v) {
    ids[sigma[v]] = g.id(v);
    w1[sigma[v]] = g.vertex_weight(v);
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back({sigma[e.u], sigma[e.v], e.w});
  return WeightedGraph(std::move(ids), std::move(w1), std::move(edges));
}

inline std::vector<Vertex> inverse_permutation(std::span<const Vertex> sigma) {
  std::vector<Vertex> inv(sigma.size());
  for (Vertex v = 0; v < sigma.size(); ++v) inv.at(sigma[v]) = v;
  return inv;
}

/// Same graph with every vertex weight replaced.
inline WeightedGraph with_vertex_weights(const WeightedGraph& g, std::vector<Rational> w1) {
  return WeightedGraph({g.ids().begin(), g.ids().end()}, std::move(w1), {g.edges().begin(), g.edges().end()});
}

}  // namespace matchpoly
