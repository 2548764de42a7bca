#include <gtest/gtest.h>

#include <functional>

#include "generators.hpp"
#include "matchpoly/demo.hpp"
#include "matchpoly/enumerate.hpp"
#include "matchpoly/gallai_edmonds.hpp"
#include "oracles.hpp"
#include "thetas.hpp"

using namespace matchpoly;
using testsupport::Palette;
using testsupport::Rng;
using testsupport::VertexPalette;

namespace {

WeightedGraph unit_graph(std::vector<std::string> ids, std::vector<std::pair<Vertex, Vertex>> pairs, long w1 = 0) {
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v, GaussianRational(1)});
  const std::size_t n = ids.size();
  return WeightedGraph(std::move(ids), std::vector<Rational>(n, Rational(w1)), std::move(edges));
}

WeightedGraph unit_path(std::size_t n, long w1 = 0) {
  std::vector<std::string> ids;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back(std::string(1, static_cast<char>('a' + i)));
    if (i) pairs.emplace_back(i - 1, i);
  }
  return unit_graph(ids, pairs, w1);
}

WeightedGraph unit_cycle(std::size_t n) {
  std::vector<std::string> ids;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back(std::to_string(i));
    pairs.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
  }
  return unit_graph(ids, pairs);
}

WeightedGraph unit_star(std::size_t leaves) {
  std::vector<std::string> ids{"c"};
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (std::size_t i = 1; i <= leaves; ++i) {
    ids.push_back("l" + std::to_string(i));
    pairs.emplace_back(0, i);
  }
  return unit_graph(ids, pairs);
}

// centre 0 joined to one end of three unit K2 legs
WeightedGraph spider() {
  return unit_graph({"c", "a1", "b1", "a2", "b2", "a3", "b3"}, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}});
}

ThetaSpec k2_theta() {
  return ThetaSpec::algebraic(RationalPolynomial({Rational(-2), Rational(-4), Rational(1)}), Rational(4), Rational(5));
}

std::vector<std::string> ids(const WeightedGraph& g, const std::vector<Vertex>& vs) {
  std::vector<std::string> out;
  for (Vertex v : vs) out.push_back(g.id(v));
  return out;
}

struct Instance {
  WeightedGraph g;
  ThetaSpec theta;
};

// Random graphs paired with every interesting theta of their eta.
std::vector<Instance> random_instances(std::uint64_t seed, std::size_t graphs, std::size_t max_n) {
  Rng rng(seed);
  std::vector<Instance> out;
  for (std::size_t t = 0; t < graphs; ++t) {
    std::size_t n = static_cast<std::size_t>(testsupport::uniform(rng, 1, static_cast<long>(max_n)));
    bool unit = t % 2 == 0;
    auto g = testsupport::random_graph(rng, n, 0.45, unit ? Palette::Unit : Palette::Small,
                                       unit ? VertexPalette::Zero : VertexPalette::Small);
    for (auto& th : testsupport::interesting_thetas(eta(g))) out.push_back({g, th});
  }
  return out;
}

}  // namespace

TEST(Multiplicity, Examples) {
  EXPECT_EQ(multiplicity(demo_graph("weighted-k2"), 0), 0u);
  EXPECT_EQ(multiplicity(unit_path(3), 0), 1u);
  auto two_k2_k1 = unit_graph({"a", "b", "c", "d", "e"}, {{0, 1}, {2, 3}});
  EXPECT_EQ(multiplicity(two_k2_k1, 0), 1u);
  EXPECT_EQ(multiplicity(demo_graph("weighted-k2"), k2_theta()), 1u);
}

TEST(Classify, PathOnThree) {
  auto p3 = unit_path(3);
  EXPECT_EQ(classify_vertex(p3, 0, 0), (VertexClass{VertexKind::Essential, false}));
  EXPECT_EQ(classify_vertex(p3, 0, 1), (VertexClass{VertexKind::Positive, true}));
  EXPECT_EQ(classify_vertex(p3, 0, 2), (VertexClass{VertexKind::Essential, false}));
  EXPECT_THROW(classify_vertex(p3, 0, 3), InputError);
}

TEST(Classify, IsolatedVertex) {
  GraphBuilder b;
  b.add_vertex("u", Rational(3, 2));
  auto g = b.build();
  EXPECT_EQ(classify_vertex(g, Rational(3, 2), 0).kind, VertexKind::Essential);
  EXPECT_EQ(classify_vertex(g, 1, 0).kind, VertexKind::Neutral);
}

TEST(Decompose, PathOnThree) {
  auto p3 = unit_path(3);
  auto d = decompose(p3, 0);
  EXPECT_EQ(d.mult, 1u);
  EXPECT_EQ(ids(p3, d.D), (std::vector<std::string>{"a", "c"}));
  EXPECT_EQ(ids(p3, d.A), (std::vector<std::string>{"b"}));
  EXPECT_TRUE(d.P.empty());
  EXPECT_TRUE(d.N.empty());
  EXPECT_EQ(d.critical_components, (std::vector<std::vector<Vertex>>{{0}, {2}}));
}

TEST(Decompose, UnitK2AtZeroIsAllPositive) {
  auto k2 = unit_path(2);
  auto d = decompose(k2, 0);
  EXPECT_EQ(d.mult, 0u);
  EXPECT_TRUE(d.D.empty());
  EXPECT_TRUE(d.A.empty());
  EXPECT_EQ(d.P, (std::vector<Vertex>{0, 1}));
  EXPECT_TRUE(d.critical_components.empty());
}

TEST(Decompose, WeightedK2AtAlgebraicRoot) {
  auto g = demo_graph("weighted-k2");
  auto d = decompose(g, k2_theta());
  EXPECT_EQ(d.mult, 1u);
  EXPECT_EQ(d.D, (std::vector<Vertex>{0, 1}));
  EXPECT_TRUE(d.A.empty());
  EXPECT_EQ(d.critical_components, (std::vector<std::vector<Vertex>>{{0, 1}}));
}

TEST(Decompose, ThreadedMatchesSequential) {
  for (const auto& inst : random_instances(511, 20, 8)) {
    auto a = decompose(inst.g, inst.theta);
    auto b = decompose(inst.g, inst.theta, {4});
    EXPECT_EQ(a.classes, b.classes);
    EXPECT_EQ(a.critical_components, b.critical_components);
  }
}

TEST(EssentialPath, Examples) {
  auto p3 = unit_path(3);
  EXPECT_FALSE(essential_path_check(p3, 0, {0, 1}));
  EXPECT_TRUE(essential_path_check(p3, 0, {0, 1, 2}));
  EXPECT_FALSE(essential_path_check(unit_path(2), 0, {0, 1}));
  EXPECT_THROW(essential_path_check(p3, 0, {0}), InputError);
  EXPECT_THROW(essential_path_check(p3, 0, {0, 2}), InputError);
}

TEST(Stability, Examples) {
  EXPECT_TRUE(stability_check(unit_path(3), 0));
  auto p5 = unit_path(5);
  auto d = decompose(p5, 0);
  EXPECT_EQ(ids(p5, d.A), (std::vector<std::string>{"b", "d"}));
  EXPECT_EQ(ids(p5, d.D), (std::vector<std::string>{"a", "c", "e"}));
  EXPECT_TRUE(stability_check(p5, 0));
  EXPECT_TRUE(stability_check(unit_path(2), 0));

  auto g = delete_vertices(unit_path(3), {std::string("b")});
  auto e = decompose(g, 0);
  EXPECT_EQ(ids(g, e.D), (std::vector<std::string>{"a", "c"}));
  EXPECT_TRUE(e.A.empty());
}

TEST(GallaiLemma, Examples) {
  EXPECT_TRUE(gallai_lemma_check(unit_path(2), 1));
  EXPECT_TRUE(gallai_lemma_check(unit_cycle(5), 0));
  // mu(unit triangle) = x^3 - 3x has 0 as a simple root and every vertex is essential
  EXPECT_EQ(multiplicity(unit_cycle(3), 0), 1u);
  EXPECT_TRUE(gallai_lemma_check(unit_cycle(3), 0));
  EXPECT_FALSE(gallai_lemma_check(unit_cycle(4), 0));
  EXPECT_FALSE(gallai_lemma_check(unit_path(3), 0));
  auto disconnected = unit_graph({"a", "b"}, {});
  EXPECT_THROW(gallai_lemma_check(disconnected, 0), InputError);
}

TEST(Deficiency, Examples) {
  EXPECT_EQ(deficiency(unit_cycle(3)), 1u);
  EXPECT_EQ(deficiency(unit_path(4)), 0u);
  EXPECT_EQ(deficiency(unit_star(3)), 2u);
  EXPECT_EQ(deficiency(demo_graph("weighted-triangle")), 1u);
}

TEST(Deficiency, MatchesEdmonds) {
  Rng rng(601);
  for (int t = 0; t < 150; ++t) {
    std::size_t n = static_cast<std::size_t>(testsupport::uniform(rng, 1, 10));
    auto g = testsupport::random_graph(rng, n, 0.3, Palette::General);
    EXPECT_EQ(deficiency(g), n - 2 * testsupport::boost_max_matching(g));
  }
}

TEST(Classical, Examples) {
  auto p3 = unit_path(3);
  auto d = classical_decomposition(p3, 0);
  auto ref = decompose(p3, 0);
  EXPECT_EQ(d.classes, ref.classes);
  EXPECT_TRUE(d.N.empty());

  auto shifted = classical_decomposition(unit_path(3, 5), 5);
  EXPECT_EQ(shifted.D, d.D);
  EXPECT_EQ(shifted.A, d.A);
  EXPECT_EQ(shifted.P, d.P);

  auto p4 = classical_decomposition(unit_path(4), 0);
  EXPECT_EQ(p4.mult, 0u);
  EXPECT_TRUE(p4.D.empty());
  EXPECT_TRUE(p4.A.empty());
  EXPECT_EQ(p4.P.size(), 4u);

  EXPECT_THROW(classical_decomposition(demo_graph("weighted-k2"), 1), InputError);
}

TEST(Classical, RandomGraphsHaveNoNeutralVertices) {
  Rng rng(602);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = static_cast<std::size_t>(testsupport::uniform(rng, 1, 8));
    Rational c(testsupport::uniform(rng, -2, 2), testsupport::uniform(rng, 1, 2));
    auto g = with_vertex_weights(testsupport::random_graph(rng, n, 0.4, Palette::General),
                                 std::vector<Rational>(n, c));
    auto d = classical_decomposition(g, c);
    EXPECT_EQ(d.mult, n - 2 * testsupport::boost_max_matching(g));
  }
}

TEST(Parter, StarAtZero) {
  auto r = parter_wiener_find(build_matrix(unit_star(3)), 0);
  ASSERT_TRUE(std::holds_alternative<ParterReport>(r));
  const auto& rep = std::get<ParterReport>(r);
  EXPECT_EQ(rep.vertex, 0u);
  EXPECT_EQ(rep.degree, 3u);
  EXPECT_EQ(rep.mult_before, 2u);
  EXPECT_EQ(rep.mult_after, 3u);
  EXPECT_EQ(rep.branches.size(), 3u);
}

TEST(Parter, UnitK2AtOneIsNotMet) {
  auto r = parter_wiener_find(build_matrix(unit_path(2)), 1);
  ASSERT_TRUE(std::holds_alternative<HypothesisNotMet>(r));
  EXPECT_EQ(std::get<HypothesisNotMet>(r).mult, 1u);
  auto z = parter_wiener_find(build_matrix(unit_path(2)), 0);
  ASSERT_TRUE(std::holds_alternative<HypothesisNotMet>(z));
  EXPECT_EQ(std::get<HypothesisNotMet>(z).mult, 0u);
}

TEST(Parter, SpiderCentre) {
  for (long th : {1L, -1L}) {
    auto r = parter_wiener_find(build_matrix(spider()), th);
    ASSERT_TRUE(std::holds_alternative<ParterReport>(r));
    const auto& rep = std::get<ParterReport>(r);
    EXPECT_EQ(rep.vertex, 0u);
    EXPECT_EQ(rep.mult_before, 2u);
    EXPECT_EQ(rep.branches.size(), 3u);
    for (const auto& b : rep.branches) EXPECT_EQ(b.mult, 1u);
  }
}

TEST(Parter, NonTreeRejected) {
  EXPECT_THROW(parter_wiener_find(build_matrix(unit_cycle(4)), 0), InputError);
  EXPECT_THROW(parter_wiener_find(build_matrix(unit_graph({"a", "b"}, {})), 0), InputError);
}

TEST(Parter, RandomTreesWithSharedEigenvalue) {
  Rng rng(701);
  int high = 0, low = 0;
  for (int t = 0; t < 40; ++t) {
    std::size_t branches = 2 + static_cast<std::size_t>(t % 3);
    Rational theta(testsupport::uniform(rng, -2, 2));
    auto m = testsupport::tree_with_shared_eigenvalue(rng, branches, 3, theta);
    WeightedGraph tg = graph_from_matrix(m);
    for (const auto& r : rational_roots(eta(tg))) {
      auto res = parter_wiener_find(m, r);
      std::size_t k = multiplicity(tg, r);
      if (auto* rep = std::get_if<ParterReport>(&res)) {
        EXPECT_EQ(rep->mult_before, k);
        EXPECT_EQ(multiplicity(delete_vertices(tg, {tg.id(rep->vertex)}), r), k + 1);
        EXPECT_GE(rep->degree, k >= 2 ? 3u : 2u);
        EXPECT_GE(rep->branches.size(), k >= 2 ? 3u : 2u);
        (k >= 2 ? high : low)++;
      } else {
        EXPECT_EQ(k, 1u);
      }
    }
  }
  EXPECT_GT(high, 0);
  EXPECT_GT(low, 0);
}

TEST(Properties, InterlacingAndEssentialExistence) {
  for (const auto& inst : random_instances(801, 80, 8)) {
    auto d = decompose(inst.g, inst.theta);
    EXPECT_EQ(d.mult, testsupport::oracle_mult(inst.g, inst.theta));
    EXPECT_TRUE(d.mult == 0 || !d.D.empty());
    for (Vertex u = 0; u < inst.g.order(); ++u) {
      long before = static_cast<long>(d.mult);
      long after = static_cast<long>(testsupport::oracle_mult(delete_vertices(inst.g, {inst.g.id(u)}), inst.theta));
      EXPECT_LE(std::abs(after - before), 1);
      VertexKind expect = after < before ? VertexKind::Essential
                                         : (after == before ? VertexKind::Neutral : VertexKind::Positive);
      EXPECT_EQ(d.classes[u].kind, expect);
    }
  }
}

TEST(Properties, SpecialVerticesArePositiveWithDegreeTwo) {
  std::size_t seen = 0;
  for (const auto& inst : random_instances(802, 80, 8)) {
    auto d = decompose(inst.g, inst.theta);
    for (Vertex a : d.A) {
      EXPECT_EQ(d.classes[a].kind, VertexKind::Positive);
      EXPECT_GE(inst.g.degree(a), 2u);
      ++seen;
    }
    EXPECT_TRUE(d.A.empty() || stability_check(inst.g, inst.theta));
  }
  EXPECT_GT(seen, 0u);
}

TEST(Properties, CriticalComponentsSatisfyGallaiLemma) {
  for (const auto& inst : random_instances(803, 60, 8)) {
    auto d = decompose(inst.g, inst.theta);
    for (const auto& comp : d.critical_components) {
      std::vector<std::string> keep;
      for (Vertex v : comp) keep.push_back(inst.g.id(v));
      std::vector<std::string> drop;
      for (Vertex v = 0; v < inst.g.order(); ++v)
        if (std::find(comp.begin(), comp.end(), v) == comp.end()) drop.push_back(inst.g.id(v));
      auto h = delete_vertices(inst.g, drop);
      EXPECT_TRUE(gallai_lemma_check(h, inst.theta));
    }
  }
}

TEST(Properties, DeletingNonEssentialVertexKeepsEssentials) {
  for (const auto& inst : random_instances(804, 60, 7)) {
    auto d = decompose(inst.g, inst.theta);
    for (Vertex u = 0; u < inst.g.order(); ++u) {
      if (d.classes[u].kind == VertexKind::Essential) continue;
      auto h = delete_vertices(inst.g, {inst.g.id(u)});
      auto e = decompose(h, inst.theta);
      for (Vertex v : d.D) {
        EXPECT_EQ(e.classes[h.vertex_of(inst.g.id(v))].kind, VertexKind::Essential)
            << "deleting " << to_string(d.classes[u].kind) << " vertex " << inst.g.id(u);
      }
    }
  }
}

TEST(Properties, HeilmannLieb) {
  Rng rng(805);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = static_cast<std::size_t>(testsupport::uniform(rng, 2, 6));
    auto g = testsupport::random_graph(rng, n, 0.5);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) EXPECT_TRUE(heilmann_lieb_check(g, u, v));
  }
}

TEST(Properties, PathInterlacing) {
  for (const auto& inst : random_instances(806, 40, 7)) {
    std::size_t k = multiplicity(inst.g, inst.theta);
    for (Vertex u = 0; u < inst.g.order(); ++u)
      for_each_path_from(inst.g, u, [&](const Path& p) {
        if (p.length() == 0) return;
        std::vector<std::string> drop;
        for (Vertex v : p.vertices) drop.push_back(inst.g.id(v));
        std::size_t after = multiplicity(delete_vertices(inst.g, drop), inst.theta);
        EXPECT_GE(after + 1, k);
        EXPECT_EQ(essential_path_check(inst.g, inst.theta, p.vertices), after + 1 == k);
      }, 100000);
  }
}

TEST(Properties, EssentialPathExtension) {
  for (const auto& inst : random_instances(807, 60, 7)) {
    auto d = decompose(inst.g, inst.theta);
    for (Vertex u = 0; u < inst.g.order(); ++u) {
      if (d.classes[u].kind == VertexKind::Essential) {
        if (inst.theta.is_rational() && inst.theta.rational() == inst.g.vertex_weight(u)) continue;
        bool found = false;
        for (Vertex v : inst.g.neighbours(u)) found = found || essential_path_check(inst.g, inst.theta, {u, v});
        EXPECT_TRUE(found) << "essential vertex " << inst.g.id(u);
      } else {
        for_each_path_from(inst.g, u, [&](const Path& p) {
          EXPECT_TRUE(p.length() == 0 || !essential_path_check(inst.g, inst.theta, p.vertices));
        }, 100000);
      }
    }
  }
}

TEST(Properties, PathCoverBounds) {
  Rng rng(808);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = static_cast<std::size_t>(testsupport::uniform(rng, 1, 7));
    // Hamiltonian path 0-1-..-(n-1) plus random chords: every root is simple
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex v = 1; v < n; ++v) pairs.emplace_back(v - 1, v);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 2; v < n; ++v)
        if (testsupport::uniform(rng, 0, 2) == 0) pairs.emplace_back(u, v);
    auto g = testsupport::make_graph(n, pairs, rng, Palette::General, VertexPalette::General);
    auto p = eta(g);
    EXPECT_TRUE(is_square_free(p));
    for (const auto& th : testsupport::interesting_thetas(p)) EXPECT_LE(multiplicity(g, th), 1u);

    auto h = testsupport::random_graph(rng, n, 0.4, Palette::General);
    std::size_t longest = 0;
    for (Vertex u = 0; u < n; ++u)
      for_each_path_from(h, u, [&](const Path& q) { longest = std::max(longest, q.vertices.size()); }, 100000);
    EXPECT_GE(distinct_real_root_count(eta(h)), longest);
  }
}
