#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "support.hpp"
#include "twindh/digraph.hpp"
#include "twindh/edge_list.hpp"
#include "twindh/errors.hpp"

using namespace twindh;

TEST_SUITE("digraph") {

TEST_CASE("construction rejects loops, duplicates and bad ids") {
  CHECK_THROWS_AS(Digraph(2, {{0, 0}}), InputError);
  CHECK_THROWS_AS(Digraph(2, {{0, 1}, {0, 1}}), InputError);
  CHECK_THROWS_AS(Digraph(2, {{0, 2}}), InputError);
  const std::vector<Arc> dup{{0, 1}, {0, 1}};
  CHECK(Digraph(2, dup, Digraph::Duplicates::Merge).arc_count() == 1);
  const Digraph both(2, {{0, 1}, {1, 0}});
  CHECK(both.has_arc(0, 1));
  CHECK(both.has_arc(1, 0));
  CHECK(both.arc_count() == 2);
}

TEST_CASE("induced subgraph") {
  const Digraph c3(3, {{0, 1}, {1, 2}, {2, 0}});
  const std::vector<Vertex> keep{0, 1};
  const auto sub = induced_subgraph(c3, keep);
  CHECK(sub.graph == Digraph(2, {{0, 1}}));
  CHECK(sub.to_original == VertexSet{0, 1});
  CHECK(sub.to_local[2] == -1);

  const Digraph h0(3, {{0, 1}, {1, 0}, {1, 2}, {2, 0}});
  CHECK(induced_subgraph(h0, keep).graph == Digraph(2, {{0, 1}, {1, 0}}));

  const std::vector<Vertex> all{2, 0, 1};
  CHECK(induced_subgraph(c3, all).graph == c3);

  const std::vector<Vertex> bad{0, 3};
  CHECK_THROWS_AS(induced_subgraph(c3, bad), InputError);
}

TEST_CASE("underlying graph") {
  const auto tri = underlying(Digraph(3, {{0, 1}, {1, 2}, {2, 0}}));
  CHECK(tri.edge_count() == 3);
  const auto edge = underlying(Digraph(2, {{0, 1}, {1, 0}}));
  CHECK(edge.edge_count() == 1);
  CHECK(edge.has_edge(1, 0));
  CHECK(underlying(Digraph(3)).edge_count() == 0);
}

TEST_CASE("strong and weak components") {
  CHECK(strong_components(Digraph(3, {{0, 1}, {1, 2}})) ==
        std::vector<VertexSet>{{0}, {1}, {2}});
  CHECK(strong_components(Digraph(3, {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}})) ==
        std::vector<VertexSet>{{0, 1, 2}});
  CHECK(strong_components(Digraph(3, {{0, 1}, {1, 0}, {1, 2}})) ==
        std::vector<VertexSet>{{0, 1}, {2}});
  CHECK(weak_components(Digraph(4, {{0, 1}, {2, 3}})) == std::vector<VertexSet>{{0, 1}, {2, 3}});
  CHECK(weak_components(Digraph(3, {{0, 1}, {1, 2}, {2, 0}})).size() == 1);
  CHECK(weak_components(Digraph(3, {{1, 2}, {2, 1}})).size() == 2);
}

TEST_CASE("small isomorphism") {
  const Digraph c3(3, {{0, 1}, {1, 2}, {2, 0}});
  const Digraph c3p(3, {{1, 2}, {2, 0}, {0, 1}});
  const Digraph bio(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 0}, {0, 2}});
  CHECK(is_isomorphic_small(c3, c3p));
  CHECK_FALSE(is_isomorphic_small(c3, bio));
  const Digraph h6(4, {{0, 1}, {0, 2}, {2, 3}, {3, 1}});
  const Digraph h6p(4, {{3, 2}, {3, 0}, {0, 1}, {1, 2}});
  CHECK(is_isomorphic_small(h6, h6p));
  CHECK(canonical_code_small(h6) == canonical_code_small(h6p));
  CHECK_THROWS_AS(canonical_code_small(Digraph(7)), CapExceeded);
}

TEST_CASE("distance") {
  const Digraph p3(3, {{0, 1}, {1, 2}});
  CHECK(distance(p3, 0, 2) == 2);
  CHECK_FALSE(distance(p3, 2, 0).has_value());
  CHECK(distance(Digraph(2, {{0, 1}, {1, 0}}), 0, 1) == 1);
}

TEST_CASE("property: induced subgraph commutes with underlying") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(8));
    const Digraph g = testing::random_mixed_digraph(rng, n);
    VertexSet keep;
    for (Vertex v = 0; v < n; ++v)
      if (rng.below(2)) keep.push_back(v);
    CHECK(underlying(induced_subgraph(g, keep).graph) == induced_subgraph(underlying(g), keep));
  }
}

TEST_CASE("property: strong components partition the vertices") {
  Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(12));
    const Digraph g = testing::random_mixed_digraph(rng, n);
    std::vector<Vertex> all;
    for (const auto& c : strong_components(g)) all.insert(all.end(), c.begin(), c.end());
    std::sort(all.begin(), all.end());
    std::vector<Vertex> expected(static_cast<std::size_t>(n));
    std::iota(expected.begin(), expected.end(), 0);
    CHECK(all == expected);
  }
}

TEST_CASE("property: isomorphism is an equivalence on relabelings") {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(5));
    const Digraph g = testing::random_mixed_digraph(rng, n);
    auto relabel = [&](const Digraph& h) {
      std::vector<Vertex> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), 0);
      for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
      std::vector<Arc> arcs;
      for (const auto& [u, v] : h.arcs()) arcs.emplace_back(perm[u], perm[v]);
      return Digraph(n, arcs);
    };
    const Digraph h = relabel(g), k = relabel(h);
    CHECK(is_isomorphic_small(g, g));
    CHECK(is_isomorphic_small(g, h) == is_isomorphic_small(h, g));
    CHECK(is_isomorphic_small(g, k));
    const Digraph other = testing::random_mixed_digraph(rng, n);
    CHECK(is_isomorphic_small(g, other) == (canonical_code_small(g) == canonical_code_small(other)));
  }
}

TEST_CASE("property: distance triangle inequality") {
  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(7));
    const Digraph g = testing::random_mixed_digraph(rng, n);
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = 0; b < n; ++b)
        for (Vertex c = 0; c < n; ++c) {
          const auto ab = distance(g, a, b), bc = distance(g, b, c), ac = distance(g, a, c);
          if (ab && bc) {
            REQUIRE(ac.has_value());
            CHECK(*ac <= *ab + *bc);
          }
        }
  }
}

}  // TEST_SUITE

TEST_SUITE("edge_list") {

TEST_CASE("round trip") {
  const Digraph g(4, {{0, 1}, {1, 0}, {2, 3}});
  const std::string text = format_edge_list(g);
  CHECK(text == "4\n0 1\n1 0\n2 3\n");
  CHECK(parse_edge_list(text) == g);
}

TEST_CASE("comments and blank lines") {
  CHECK(parse_edge_list("# header\n3\n\n0 1\n# mid\n1 2\n") == Digraph(3, {{0, 1}, {1, 2}}));
}

TEST_CASE("errors carry line numbers") {
  auto line_of = [](const char* text) {
    try {
      parse_edge_list(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("3\n0 1\n1 1\n") == 3);
  CHECK(line_of("3\n0 1\n0 1\n") == 3);
  CHECK(line_of("3\n0 5\n") == 2);
  CHECK(line_of("x\n") == 1);
  CHECK(line_of("2\n0 1 2\n") == 2);
}

}  // TEST_SUITE
