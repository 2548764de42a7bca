#include <gtest/gtest.h>

#include <functional>
#include <string>

#include "generators.hpp"
#include "matchpoly/demo.hpp"
#include "matchpoly/io.hpp"

using namespace matchpoly;

namespace {

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "<no error>";
}

const char* kTriangle = R"({
  "vertices": [{"id": "v1", "w1": "1"}, {"id": "v2", "w1": "2/1"}, {"id": "v3", "w1": "3"}],
  "edges": [
    {"u": "v1", "v": "v2", "w": {"re": "1", "im": "2"}},
    {"u": "v2", "v": "v3", "w": {"re": "2", "im": "-7"}},
    {"u": "v1", "v": "v3", "w": {"re": "-3", "im": "2"}}
  ]
})";

}  // namespace

TEST(GraphJson, ParsesTriangle) {
  auto g = io::parse_graph(kTriangle);
  EXPECT_EQ(g, demo_graph("weighted-triangle"));
}

TEST(GraphJson, ImaginaryPartOptionalAndEdgesOptional) {
  auto g = io::parse_graph(R"({"vertices":[{"id":"a","w1":"0"},{"id":"b","w1":"-1/2"}],
                               "edges":[{"u":"a","v":"b","w":{"re":"3/4"}}]})");
  EXPECT_EQ(g.weight(0, 1), GaussianRational(Rational(3, 4)));
  EXPECT_EQ(g.vertex_weight(1), Rational(-1, 2));
  auto h = io::parse_graph(R"({"vertices":[{"id":"a","w1":"5"}]})");
  EXPECT_EQ(h.order(), 1u);
  EXPECT_EQ(h.size(), 0u);
}

TEST(GraphJson, RoundTripIsStable) {
  for (const auto& name : demo_names()) {
    auto g = demo_graph(name);
    std::string once = io::serialize_graph(g);
    auto back = io::parse_graph(once);
    EXPECT_EQ(back, g) << name;
    EXPECT_EQ(io::serialize_graph(back), once) << name;
  }
  testsupport::Rng rng(901);
  for (int t = 0; t < 50; ++t) {
    auto g = testsupport::random_graph(rng, static_cast<std::size_t>(testsupport::uniform(rng, 0, 8)), 0.5);
    std::string once = io::serialize_graph(g);
    EXPECT_EQ(io::serialize_graph(io::parse_graph(once)), once);
  }
}

TEST(GraphJson, Diagnostics) {
  EXPECT_NE(error_of([] { io::parse_graph("{\"vertices\": [", "g.json"); }).find("g.json"), std::string::npos);
  EXPECT_NE(error_of([] { io::parse_graph(R"({"edges":[]})"); }).find("vertices"), std::string::npos);
  EXPECT_NE(error_of([] { io::parse_graph(R"({"vertices":[{"id":"a"}]})"); }).find("vertices[0]"),
            std::string::npos);
  EXPECT_NE(error_of([] { io::parse_graph(R"({"vertices":[{"id":"a","w1":"1/0"}]})"); }).find("vertices[0].w1"),
            std::string::npos);
  EXPECT_NE(error_of([] {
              io::parse_graph(R"({"vertices":[{"id":"a","w1":"0"},{"id":"b","w1":"0"}],
                                  "edges":[{"u":"a","v":"b","w":{"re":"x"}}]})");
            }).find("edges[0].w.re"),
            std::string::npos);
  EXPECT_NE(error_of([] {
              io::parse_graph(R"({"vertices":[{"id":"a","w1":"0"}],"edges":[{"u":"a","v":"z","w":{"re":"1"}}]})");
            }).find("edges[0]"),
            std::string::npos);
  EXPECT_THROW(io::parse_graph(R"({"vertices":[{"id":"a","w1":"0"},{"id":"a","w1":"0"}]})"), InputError);
  EXPECT_THROW(io::parse_graph(R"({"vertices":[{"id":"a","w1":"0"}],"edges":[{"u":"a","v":"a","w":{"re":"1"}}]})"),
               InputError);
  EXPECT_THROW(io::parse_graph(R"({"vertices":[{"id":"a","w1":"0"},{"id":"b","w1":"0"}],
                                   "edges":[{"u":"a","v":"b","w":{"re":"0","im":"0"}}]})"),
               InputError);
  EXPECT_THROW(io::read_file("/nonexistent/graph.json"), InputError);
}

TEST(MatrixJson, ParsesAndMirrors) {
  auto m = io::parse_matrix(R"({"n":3,"entries":[{"i":0,"j":0,"re":"1/2"},{"i":0,"j":2,"re":"1","im":"-1"}]})");
  EXPECT_EQ(m.order(), 3u);
  EXPECT_EQ(m.at(0, 0), GaussianRational(Rational(1, 2)));
  EXPECT_EQ(m.at(0, 2), GaussianRational(Rational(1), Rational(-1)));
  EXPECT_EQ(m.at(2, 0), GaussianRational(Rational(1), Rational(1)));
  EXPECT_EQ(m.at(1, 2), GaussianRational(0));
  EXPECT_EQ(io::parse_matrix(io::matrix_to_json(m).dump()), m);
}

TEST(MatrixJson, Rejections) {
  EXPECT_THROW(io::parse_matrix(R"({"n":2,"entries":[{"i":1,"j":0,"re":"1"}]})"), InputError);
  EXPECT_THROW(io::parse_matrix(R"({"n":2,"entries":[{"i":0,"j":2,"re":"1"}]})"), InputError);
  EXPECT_THROW(io::parse_matrix(R"({"n":2,"entries":[{"i":0,"j":1,"re":"1"},{"i":0,"j":1,"re":"2"}]})"),
               InputError);
  EXPECT_THROW(io::parse_matrix(R"({"n":2,"entries":[{"i":1,"j":1,"re":"1","im":"1"}]})"), InputError);
  EXPECT_THROW(io::parse_matrix(R"({"n":-1,"entries":[]})"), InputError);
  EXPECT_THROW(io::parse_matrix(R"({"n":2})"), InputError);
}

TEST(ResultJson, Shapes) {
  RationalPolynomial p({Rational(-2), Rational(-4), Rational(1)});
  EXPECT_EQ(io::poly_to_json(p).dump(), R"(["-2/1","-4/1","1/1"])");
  EXPECT_EQ(io::poly_from_json(nlohmann::json::parse(io::poly_to_json(p).dump())), p);
  EXPECT_EQ(io::poly_to_json(RationalPolynomial()).dump(), R"(["0/1"])");
  EXPECT_EQ(io::theta_to_json(ThetaSpec(Rational(1, 2))).dump(), R"({"kind":"rational","value":"1/2"})");
  auto alg = ThetaSpec::algebraic(p, Rational(4), Rational(5));
  EXPECT_EQ(io::theta_to_json(alg).dump(),
            R"({"kind":"algebraic","min_poly":["-2/1","-4/1","1/1"],"interval":["4/1","5/1"]})");

  auto g = demo_graph("weighted-k2");
  auto d = decompose(g, alg);
  EXPECT_EQ(io::decomposition_to_json(g, d).dump(),
            R"({"theta":{"kind":"algebraic","min_poly":["-2/1","-4/1","1/1"],"interval":["4/1","5/1"]},)"
            R"("mult":1,"D":["u1","u2"],"A":[],"P":[],"N":[],"critical_components":[["u1","u2"]]})");
}
