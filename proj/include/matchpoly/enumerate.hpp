#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "matchpoly/errors.hpp"
#include "matchpoly/graph.hpp"

namespace matchpoly {

/// Caps for the exponential enumerators.
struct EnumerationLimits {
  std::size_t max_vertices = 16;
  std::size_t max_items = 5'000'000;
};

/// Pairwise vertex-disjoint edges, each stored as its (u, v) with u < v.
struct Matching {
  std::vector<std::pair<Vertex, Vertex>> edges;

  std::size_t size() const { return edges.size(); }
  VertexMask covered() const {
    VertexMask m = 0;
    for (auto [u, v] : edges) m |= bit(u) | bit(v);
    return m;
  }
};

/// |w(M)|^2 = product of |w(e)|^2 over e in M.
inline Rational weight_norm(const WeightedGraph& g, const Matching& m) {
  Rational r(1);
  for (auto [u, v] : m.edges) r *= g.weight(u, v).norm();
  return r;
}

/// Simple path as its vertex sequence.
struct Path {
  std::vector<Vertex> vertices;

  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  VertexMask mask() const {
    VertexMask m = 0;
    for (Vertex v : vertices) m |= bit(v);
    return m;
  }
};

/// w(p), product of edge weights along the path.
inline GaussianRational path_weight(const WeightedGraph& g, const Path& p) {
  GaussianRational w(1);
  for (std::size_t i = 1; i < p.vertices.size(); ++i) w *= g.weight(p.vertices[i - 1], p.vertices[i]);
  return w;
}

/// Cycle as a vertex sequence starting at its smallest vertex, second vertex smaller
/// than the last; this makes rotations and reflections collapse to one representative.
struct Cycle {
  std::vector<Vertex> vertices;

  VertexMask mask() const {
    VertexMask m = 0;
    for (Vertex v : vertices) m |= bit(v);
    return m;
  }
};

/// Non-empty set of pairwise vertex-disjoint cycles.
struct CycleUnion {
  std::vector<Cycle> cycles;

  VertexMask mask() const {
    VertexMask m = 0;
    for (const auto& c : cycles) m |= c.mask();
    return m;
  }
};

namespace detail {

inline void check_vertex_cap(const WeightedGraph& g, const EnumerationLimits& lim, const char* what) {
  g.require_mask_capacity();
  if (g.order() > lim.max_vertices)
    throw ResourceError(std::string(what) + " on " + std::to_string(g.order()) + " vertices", lim.max_vertices);
}

struct ItemCounter {
  std::size_t cap;
  std::size_t seen = 0;
  const char* what;
  void tick() {
    if (++seen > cap) throw ResourceError(std::string(what) + " exceeded the item cap", cap);
  }
};

}  // namespace detail

/// Calls visit on every matching of g exactly once, including the empty matching.
inline void for_each_matching(const WeightedGraph& g, const std::function<void(const Matching&)>& visit,
                              const EnumerationLimits& lim = {}) {
  detail::check_vertex_cap(g, lim, "matching enumeration");
  std::vector<VertexMask> adj(g.order());
  for (Vertex v = 0; v < g.order(); ++v) adj[v] = g.neighbour_mask(v);
  detail::ItemCounter counter{lim.max_items, 0, "matching enumeration"};
  Matching cur;
  // Branch on the lowest undecided vertex: leave it unmatched, or match it upward.
  std::function<void(VertexMask)> rec = [&](VertexMask open) {
    if (open == 0) {
      counter.tick();
      visit(cur);
      return;
    }
    Vertex v = lowest(open);
    VertexMask rest = open & ~bit(v);
    rec(rest);
    for_each_bit(adj[v] & rest, [&](Vertex u) {
      cur.edges.emplace_back(v, u);
      rec(rest & ~bit(u));
      cur.edges.pop_back();
    });
  };
  rec(full_mask(g.order()));
}

inline std::vector<Matching> enumerate_matchings(const WeightedGraph& g, const EnumerationLimits& lim = {}) {
  std::vector<Matching> out;
  for_each_matching(g, [&](const Matching& m) { out.push_back(m); }, lim);
  return out;
}

/// Every simple path with endpoints u and v, each once (traversed from u).
inline void for_each_path_between(const WeightedGraph& g, Vertex u, Vertex v,
                                  const std::function<void(const Path&)>& visit,
                                  const EnumerationLimits& lim = {}) {
  if (u == v) throw InputError("path endpoints must differ");
  if (u >= g.order() || v >= g.order()) throw InputError("path endpoint out of range");
  detail::check_vertex_cap(g, lim, "path enumeration");
  detail::ItemCounter counter{lim.max_items, 0, "path enumeration"};
  Path cur{{u}};
  VertexMask used = bit(u);
  std::function<void(Vertex)> rec = [&](Vertex at) {
    for (Vertex nxt : g.neighbours(at)) {
      if (used & bit(nxt)) continue;
      cur.vertices.push_back(nxt);
      if (nxt == v) {
        counter.tick();
        visit(cur);
      } else {
        used |= bit(nxt);
        rec(nxt);
        used &= ~bit(nxt);
      }
      cur.vertices.pop_back();
    }
  };
  rec(u);
}

inline std::vector<Path> enumerate_paths_between(const WeightedGraph& g, Vertex u, Vertex v,
                                                 const EnumerationLimits& lim = {}) {
  std::vector<Path> out;
  for_each_path_between(g, u, v, [&](const Path& p) { out.push_back(p); }, lim);
  return out;
}

/// Every simple path starting at root (including the trivial path), in
/// lexicographic order of vertex sequences. Works for any graph size.
inline void for_each_path_from(const WeightedGraph& g, Vertex root, const std::function<void(const Path&)>& visit,
                               std::size_t max_paths) {
  if (root >= g.order()) throw InputError("path root out of range");
  detail::ItemCounter counter{max_paths, 0, "paths from root"};
  Path cur{{root}};
  std::vector<bool> used(g.order(), false);
  used[root] = true;
  std::function<void(Vertex)> rec = [&](Vertex at) {
    counter.tick();
    visit(cur);
    for (Vertex nxt : g.neighbours(at)) {
      if (used[nxt]) continue;
      used[nxt] = true;
      cur.vertices.push_back(nxt);
      rec(nxt);
      cur.vertices.pop_back();
      used[nxt] = false;
    }
  };
  rec(root);
}

/// Every cycle (length >= 3) of g exactly once, in canonical form.
inline std::vector<Cycle> enumerate_cycles(const WeightedGraph& g, const EnumerationLimits& lim = {}) {
  detail::check_vertex_cap(g, lim, "cycle enumeration");
  detail::ItemCounter counter{lim.max_items, 0, "cycle enumeration"};
  std::vector<Cycle> out;
  for (Vertex s = 0; s < g.order(); ++s) {
    std::vector<Vertex> path{s};
    VertexMask used = bit(s);
    std::function<void(Vertex)> rec = [&](Vertex at) {
      for (Vertex nxt : g.neighbours(at)) {
        if (nxt == s) {
          if (path.size() >= 3 && path[1] < path.back()) {
            counter.tick();
            out.push_back({path});
          }
          continue;
        }
        if (nxt < s || (used & bit(nxt))) continue;
        used |= bit(nxt);
        path.push_back(nxt);
        rec(nxt);
        path.pop_back();
        used &= ~bit(nxt);
      }
    };
    rec(s);
  }
  return out;
}

/// Every non-empty set of pairwise vertex-disjoint cycles exactly once.
inline void for_each_cycle_union(const WeightedGraph& g, const std::function<void(const CycleUnion&)>& visit,
                                 const EnumerationLimits& lim = {}) {
  auto cycles = enumerate_cycles(g, lim);
  std::vector<VertexMask> masks;
  for (const auto& c : cycles) masks.push_back(c.mask());
  detail::ItemCounter counter{lim.max_items, 0, "cycle-union enumeration"};
  CycleUnion cur;
  std::function<void(std::size_t, VertexMask)> rec = [&](std::size_t from, VertexMask used) {
    for (std::size_t i = from; i < cycles.size(); ++i) {
      if (masks[i] & used) continue;
      cur.cycles.push_back(cycles[i]);
      counter.tick();
      visit(cur);
      rec(i + 1, used | masks[i]);
      cur.cycles.pop_back();
    }
  };
  rec(0, 0);
}

inline std::vector<CycleUnion> enumerate_cycle_unions(const WeightedGraph& g, const EnumerationLimits& lim = {}) {
  std::vector<CycleUnion> out;
  for_each_cycle_union(g, [&](const CycleUnion& c) { out.push_back(c); }, lim);
  return out;
}

}  // namespace matchpoly
