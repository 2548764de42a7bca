#pragma once

#include <string>
#include <vector>

#include "matchpoly/errors.hpp"
#include "matchpoly/graph.hpp"

namespace matchpoly {

inline std::vector<std::string> demo_names() {
  return {"weighted-k2", "weighted-triangle", "c4-cycle-order", "c4-split-order", "bowtie"};
}

/// Small reference graphs with known polynomials.
inline WeightedGraph demo_graph(const std::string& name) {
  using GR = GaussianRational;
  GraphBuilder b;
  if (name == "weighted-k2") {
    // eta = phi = x^2 - 4x - 2
    b.add_vertex("u1", 1);
    b.add_vertex("u2", 3);
    b.add_edge("u1", "u2", GR(2, 1));
  } else if (name == "weighted-triangle") {
    // eta = x^3 - 6x^2 - 60x + 88, phi = x^3 - 6x^2 - 60x + 196
    b.add_vertex("v1", 1);
    b.add_vertex("v2", 2);
    b.add_vertex("v3", 3);
    b.add_edge("v1", "v2", GR(1, 2));
    b.add_edge("v2", "v3", GR(2, -7));
    b.add_edge("v1", "v3", GR(-3, 2));
  } else if (name == "c4-cycle-order" || name == "c4-split-order") {
    // Same 4-cycle with every edge weight i, labelled in two ways:
    // phi = x^4 - 4x^2 + 4 and phi = x^4 - 4x^2 respectively.
    const bool cyc = name == "c4-cycle-order";
    const std::string p = cyc ? "u" : "v";
    for (int k = 1; k <= 4; ++k) b.add_vertex(p + std::to_string(k), 0);
    auto e = [&](int a, int c) { b.add_edge(p + std::to_string(a), p + std::to_string(c), kImaginaryUnit); };
    if (cyc) {
      e(1, 2), e(2, 3), e(3, 4), e(1, 4);
    } else {
      e(1, 3), e(2, 3), e(2, 4), e(1, 4);
    }
  } else if (name == "bowtie") {
    // Two triangles sharing u3; phi = eta = x^5 - 14x^4 + 70x^3 - 152x^2 + 135x - 35
    const long w1[] = {2, 3, 4, 2, 3};
    for (int k = 1; k <= 5; ++k) b.add_vertex("u" + std::to_string(k), w1[k - 1]);
    b.add_edge("u1", "u2", GR(1));
    b.add_edge("u1", "u3", GR(-1, 1));
    b.add_edge("u2", "u3", GR(1));
    b.add_edge("u3", "u4", GR(1));
    b.add_edge("u3", "u5", GR(1));
    b.add_edge("u4", "u5", GR(1));
  } else {
    std::string known;
    for (const auto& n : demo_names()) known += (known.empty() ? "" : ", ") + n;
    throw InputError("unknown demo graph \"" + name + "\" (known: " + known + ")");
  }
  return b.build();
}

}  // namespace matchpoly
