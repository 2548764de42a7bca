#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "matchpoly/enumerate.hpp"
#include "matchpoly/errors.hpp"
#include "matchpoly/graph.hpp"
#include "matchpoly/matching_poly.hpp"
#include "matchpoly/polynomial.hpp"

namespace matchpoly {

inline constexpr std::size_t kDefaultPathTreeCap = 100'000;

/// T(G, u): one node per simple path of G starting at u, numbered in lexicographic
/// path order; node 0 is the trivial path (u).
struct PathTree {
  WeightedGraph tree;
  std::vector<std::vector<Vertex>> node_paths;
  Vertex root = 0;
};

/// Number of simple paths starting at u, the trivial one included. Throws once the
/// count passes cap.
inline std::size_t count_paths_from(const WeightedGraph& g, Vertex u, std::size_t cap) {
  std::size_t count = 0;
  try {
    for_each_path_from(g, u, [&](const Path&) { ++count; }, cap);
  } catch (const ResourceError&) {
    throw ResourceError("simple paths from " + g.id(u) + ": count reached " + std::to_string(count + 1), cap);
  }
  return count;
}

inline PathTree build_path_tree(const WeightedGraph& g, Vertex u, std::size_t cap = kDefaultPathTreeCap) {
  if (u >= g.order()) throw InputError("path-tree root out of range");
  const std::size_t total = count_paths_from(g, u, cap);

  PathTree pt;
  pt.node_paths.reserve(total);
  std::vector<std::string> ids;
  std::vector<Rational> w1;
  std::vector<Edge> edges;
  ids.reserve(total);
  w1.reserve(total);
  edges.reserve(total ? total - 1 : 0);

  // DFS order equals lexicographic order; the parent of a path is the node on top
  // of the stack one level up.
  std::vector<Vertex> stack;
  for_each_path_from(
      g, u,
      [&](const Path& p) {
        const Vertex node = pt.node_paths.size();
        const std::size_t depth = p.vertices.size() - 1;
        stack.resize(depth);
        const Vertex last = p.vertices.back();
        ids.push_back(std::to_string(node));
        w1.push_back(g.vertex_weight(last));
        if (depth > 0) edges.push_back({stack.back(), node, g.weight(p.vertices[depth - 1], last)});
        stack.push_back(node);
        pt.node_paths.push_back(p.vertices);
      },
      cap);
  pt.tree = WeightedGraph(std::move(ids), std::move(w1), std::move(edges));
  return pt;
}

/// eta(G \ u) eta(T) == eta(T \ root) eta(G), T = T(G, u).
inline bool ratio_identity_check(const WeightedGraph& g, Vertex u, std::size_t cap = kDefaultPathTreeCap) {
  PathTree pt = build_path_tree(g, u, cap);
  RationalPolynomial eg = eta(g);
  RationalPolynomial eg_u = eta(delete_vertices(g, {u}));
  RationalPolynomial et = eta_forest(pt.tree);
  RationalPolynomial et_u = eta_forest(delete_vertices(pt.tree, {pt.root}));
  return eg_u * et == et_u * eg;
}

/// eta(G) divides eta(T(G, u)); g must be connected.
inline bool divisibility_check(const WeightedGraph& g, Vertex u, std::size_t cap = kDefaultPathTreeCap) {
  if (!g.is_connected()) throw InputError("divisibility check requires a connected graph");
  PathTree pt = build_path_tree(g, u, cap);
  return divides(eta(g), eta_forest(pt.tree));
}

}  // namespace matchpoly
