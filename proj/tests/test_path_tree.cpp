#include <gtest/gtest.h>

#include "generators.hpp"
#include "matchpoly/demo.hpp"
#include "matchpoly/path_tree.hpp"
#include "matchpoly/roots.hpp"
#include "oracles.hpp"

using namespace matchpoly;

namespace {

WeightedGraph unit_graph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> pairs) {
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v, GaussianRational(1)});
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  return WeightedGraph(ids, std::vector<Rational>(n, Rational(0)), edges);
}

const WeightedGraph& unit_triangle() {
  static const WeightedGraph g = unit_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  return g;
}

}  // namespace

TEST(PathTree, TriangleHasFiveLexicographicNodes) {
  auto pt = build_path_tree(unit_triangle(), 0);
  ASSERT_EQ(pt.tree.order(), 5u);
  std::vector<std::vector<Vertex>> expect{{0}, {0, 1}, {0, 1, 2}, {0, 2}, {0, 2, 1}};
  EXPECT_EQ(pt.node_paths, expect);
  EXPECT_EQ(pt.root, 0u);
  EXPECT_TRUE(pt.tree.is_forest());
  EXPECT_TRUE(pt.tree.is_connected());
}

TEST(PathTree, TreeInputIsItsOwnPathTree) {
  testsupport::Rng rng(301);
  for (int t = 0; t < 30; ++t) {
    auto g = testsupport::random_tree(rng, 9);
    Vertex u = static_cast<Vertex>(testsupport::uniform(rng, 0, 8));
    auto pt = build_path_tree(g, u);
    EXPECT_EQ(pt.tree.order(), g.order());
    EXPECT_EQ(eta(pt.tree), eta(g));
  }
  auto k2 = demo_graph("weighted-k2");
  auto pt = build_path_tree(k2, 0);
  EXPECT_EQ(pt.tree.order(), 2u);
  EXPECT_EQ(pt.tree.weight(0, 1), k2.weight(0, 1));
  EXPECT_EQ(pt.tree.vertex_weight(1), Rational(3));
}

TEST(PathTree, RatioIdentityExamples) {
  for (Vertex u = 0; u < 3; ++u) EXPECT_TRUE(ratio_identity_check(unit_triangle(), u));
  EXPECT_TRUE(ratio_identity_check(demo_graph("bowtie"), 2));
  EXPECT_TRUE(ratio_identity_check(demo_graph("weighted-triangle"), 1));
}

TEST(PathTree, DivisibilityExamples) {
  auto pt = build_path_tree(unit_triangle(), 0);
  auto [q, r] = divrem(eta_forest(pt.tree), eta(unit_triangle()));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(q.degree(), 2);
  auto k2 = demo_graph("weighted-k2");
  EXPECT_EQ(divrem(eta_forest(build_path_tree(k2, 0).tree), eta(k2)).first, RationalPolynomial::constant(Rational(1)));
  EXPECT_TRUE(divisibility_check(unit_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}), 0));
  EXPECT_THROW(divisibility_check(unit_graph(3, {{0, 1}}), 0), InputError);
}

TEST(PathTree, CapReportsCount) {
  auto k7 = unit_graph(7, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6},
                           {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 4}, {3, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 6}});
  try {
    build_path_tree(k7, 0, 100);
    FAIL();
  } catch (const ResourceError& e) {
    EXPECT_EQ(e.cap(), 100u);
    EXPECT_NE(std::string(e.what()).find("count reached 101"), std::string::npos) << e.what();
  }
  EXPECT_EQ(build_path_tree(k7, 0).tree.order(), 1957u);
}

TEST(PathTreeProperty, StructureMatchesDefinition) {
  testsupport::Rng rng(302);
  for (int t = 0; t < 40; ++t) {
    auto g = testsupport::random_connected_graph(rng, 6, 3);
    Vertex u = static_cast<Vertex>(testsupport::uniform(rng, 0, 5));
    auto pt = build_path_tree(g, u);
    EXPECT_EQ(pt.tree.order(), testsupport::dfs_path_count(g, u));
    EXPECT_TRUE(pt.tree.is_forest() && pt.tree.is_connected());
    EXPECT_EQ(pt.tree.vertex_weight(pt.root), g.vertex_weight(u));
    for (std::size_t k = 1; k < pt.node_paths.size(); ++k) {
      const auto& p = pt.node_paths[k];
      EXPECT_EQ(pt.tree.vertex_weight(k), g.vertex_weight(p.back()));
      EXPECT_TRUE(std::lexicographical_compare(pt.node_paths[k - 1].begin(), pt.node_paths[k - 1].end(), p.begin(),
                                               p.end()));
    }
    for (const auto& e : pt.tree.edges()) {
      const auto& a = pt.node_paths[e.u];
      const auto& b = pt.node_paths[e.v];
      ASSERT_EQ(a.size() + 1, b.size());
      EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
      EXPECT_EQ(e.w, g.weight(a.back(), b.back()));
    }
  }
}

TEST(PathTreeProperty, IdentitiesOnRandomConnectedGraphs) {
  testsupport::Rng rng(303);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = static_cast<std::size_t>(testsupport::uniform(rng, 1, 7));
    auto g = testsupport::random_connected_graph(rng, n, 3);
    Vertex u = static_cast<Vertex>(testsupport::uniform(rng, 0, static_cast<long>(n) - 1));
    EXPECT_TRUE(ratio_identity_check(g, u));
    EXPECT_TRUE(divisibility_check(g, u));
    auto et = eta_forest(build_path_tree(g, u).tree);
    EXPECT_EQ(real_root_count_with_multiplicity(et), static_cast<std::size_t>(et.degree()));
  }
}
