#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mclab/dims.hpp"
#include "mclab/generators.hpp"
#include "mclab/simplicial.hpp"
#include "support/oracles.hpp"

using namespace mclab;

namespace {

// Cycle graph as a 1-dimensional complex.
SimplicialComplex cycle_complex(int length) {
  std::vector<std::vector<int>> faces;
  for (int v = 0; v < length; ++v) faces.push_back({v, (v + 1) % length});
  return SimplicialComplex(length, std::move(faces));
}

// Brute-force 4-cycle detector on a bipartite graph.
bool has_four_cycle(const BipartiteGraph& g) {
  for (int u1 = 0; u1 < g.left_count; ++u1) {
    for (int u2 = u1 + 1; u2 < g.left_count; ++u2) {
      int common = 0;
      for (int v = 0; v < g.right_count; ++v) {
        bool e1 = false, e2 = false;
        for (const auto& [a, b] : g.edges) {
          if (b == v && a == u1) e1 = true;
          if (b == v && a == u2) e2 = true;
        }
        if (e1 && e2) ++common;
      }
      if (common >= 2) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("complex canonicalization") {
  SimplicialComplex c(4, {{0, 1, 2}, {1, 2}, {0, 1, 2}, {3}});
  CHECK(c.maximal_faces().size() == 2);  // contained face and duplicate dropped
  CHECK(c.dimension() == 2);
  CHECK_FALSE(c.is_pure());
  CHECK_THROWS_AS(SimplicialComplex(2, {{0, 5}}), parse_error);
}

TEST_CASE("goodness checks") {
  SUBCASE("even cycles are good, dimension 1") {
    GoodnessReport r = is_good(cycle_complex(6));
    CHECK(r.good);
    REQUIRE(r.coloring.has_value());
  }
  SUBCASE("triangle with a pendant edge is not pure") {
    SimplicialComplex c(4, {{0, 1, 2}, {2, 3}});
    GoodnessReport r = is_good(c);
    CHECK_FALSE(r.good);
    CHECK(r.failing_property == "pure");
  }
  SUBCASE("a path fails replacement at its endpoints") {
    SimplicialComplex path(3, {{0, 1}, {1, 2}});
    GoodnessReport r = is_good(path);
    CHECK_FALSE(r.good);
    CHECK(r.failing_property == "replacement");
  }
  SUBCASE("odd cycles admit no 2-coloring") {
    GoodnessReport r = is_good(cycle_complex(5));
    CHECK_FALSE(r.good);
    CHECK(r.failing_property == "coloring");
  }
  SUBCASE("a wrong supplied coloring is named") {
    std::vector<int> bad(6, 0);
    GoodnessReport r = is_good(cycle_complex(6), bad);
    CHECK_FALSE(r.good);
    CHECK(r.failing_property == "coloring");
  }
}

TEST_CASE("dictionary: complexes and pseudo-cubes") {
  ConceptClass hex = gen_hexagon();

  SUBCASE("the 6-cycle with its 2-coloring gives a hexagon-shaped cube") {
    SimplicialComplex c = cycle_complex(6);
    std::vector<int> coloring{0, 1, 0, 1, 0, 1};
    ConceptClass cube = complex_to_pseudocube(c, coloring);
    CHECK(is_pseudo_cube(cube));
    CHECK(cube.size() == 6);
    CHECK(natarajan_dimension(cube).value == 1);
    ComplexWithColoring a = pseudocube_to_complex(cube);
    ComplexWithColoring b = pseudocube_to_complex(hex);
    CHECK(complexes_isomorphic(a.complex, a.coloring, b.complex, b.coloring));
  }
  SUBCASE("boolean square maps to the 4-cycle") {
    ConceptClass square = gen_boolean_cube(2);
    ComplexWithColoring c = pseudocube_to_complex(square);
    CHECK(c.complex.vertex_count() == 4);
    CHECK(c.complex.maximal_faces().size() == 4);
    CHECK(find_empty_square(c.complex).has_value());
    CHECK(find_alternating_square(c.complex, c.coloring).has_value());
  }
  SUBCASE("non-pseudo-cubes are rejected") {
    CHECK_THROWS_AS(pseudocube_to_complex(ConceptClass(2, {{0, 0}, {1, 1}})), precondition_error);
  }
  SUBCASE("bad complexes are rejected with the failing property") {
    SimplicialComplex path(3, {{0, 1}, {1, 2}});
    std::vector<int> coloring{0, 1, 0};
    CHECK_THROWS_AS(complex_to_pseudocube(path, coloring), precondition_error);
  }
}

TEST_CASE("squares") {
  SUBCASE("6-cycle has no squares at all") {
    SimplicialComplex c = cycle_complex(6);
    CHECK_FALSE(find_empty_square(c).has_value());
    std::vector<int> coloring{0, 1, 0, 1, 0, 1};
    CHECK_FALSE(find_alternating_square(c, coloring).has_value());
  }
  SUBCASE("4-cycle has an empty square") {
    SimplicialComplex c = cycle_complex(4);
    auto sq = find_empty_square(c);
    REQUIRE(sq.has_value());
    // Both diagonals absent.
    CHECK_FALSE(c.has_skeleton_edge((*sq)[0], (*sq)[2]));
    CHECK_FALSE(c.has_skeleton_edge((*sq)[1], (*sq)[3]));
  }
  SUBCASE("filled square is not empty") {
    // Two triangles sharing a diagonal.
    SimplicialComplex c(4, {{0, 1, 2}, {0, 2, 3}});
    CHECK_FALSE(find_empty_square(c).has_value());
  }
}

TEST_CASE("alternating squares characterize Natarajan dimension 2") {
  std::mt19937_64 rng(71);
  int with_square = 0, without_square = 0;
  for (int round = 0; round < 60; ++round) {
    int d = 2 + static_cast<int>(rng() % 2);
    ConceptClass cube = testing::random_pseudocube(rng, d, 40);
    ComplexWithColoring c = pseudocube_to_complex(cube);
    bool alternating = find_alternating_square(c.complex, c.coloring).has_value();
    bool nat_ge_2 = natarajan_dimension(cube).value >= 2;
    CHECK(alternating == nat_ge_2);
    alternating ? ++with_square : ++without_square;

    // No empty square forces Natarajan dimension <= 1.
    if (!find_empty_square(c.complex).has_value()) {
      CHECK(natarajan_dimension(cube).value <= 1);
    }
  }
  CHECK(with_square > 0);  // the corpus exercised both directions
  CHECK(without_square > 0);
}

TEST_CASE("bipartite dictionary") {
  SUBCASE("6-cycle bipartite graph gives a Natarajan-1 pseudo-cube") {
    BipartiteGraph g{3, 3, {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 0}}};
    BipartiteCubeResult r = bipartite_to_pseudocube(g);
    REQUIRE(r.ok);
    CHECK(r.cube.size() == 6);
    CHECK(is_pseudo_cube(r.cube));
    CHECK(natarajan_dimension(r.cube).value == 1);
  }
  SUBCASE("4-cycle gives the boolean-square structure") {
    BipartiteGraph g{2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
    BipartiteCubeResult r = bipartite_to_pseudocube(g);
    REQUIRE(r.ok);
    CHECK(natarajan_dimension(r.cube).value == 2);
  }
  SUBCASE("a path has a leaf") {
    BipartiteGraph g{2, 1, {{0, 0}, {1, 0}}};
    BipartiteCubeResult r = bipartite_to_pseudocube(g);
    CHECK_FALSE(r.ok);
    CHECK(r.diagnosis.find("leaf") != std::string::npos);
  }
  SUBCASE("no leaves iff pseudo-cube; 4-cycle iff Natarajan 2 (random graphs)") {
    std::mt19937_64 rng(73);
    int produced = 0;
    while (produced < 25) {
      BipartiteGraph g;
      g.left_count = 2 + static_cast<int>(rng() % 3);
      g.right_count = 2 + static_cast<int>(rng() % 3);
      for (int u = 0; u < g.left_count; ++u) {
        for (int v = 0; v < g.right_count; ++v) {
          if (rng() % 2 == 0) g.edges.push_back({u, v});
        }
      }
      BipartiteCubeResult r = bipartite_to_pseudocube(g);
      if (!r.ok) continue;
      ++produced;
      CHECK(is_pseudo_cube(r.cube));
      CHECK((natarajan_dimension(r.cube).value == 2) == has_four_cycle(g));
    }
  }
}

TEST_CASE("isomorphism checker") {
  ConceptClass hex = gen_hexagon();
  ComplexWithColoring a = pseudocube_to_complex(hex);

  SUBCASE("relabeled copies are isomorphic") {
    // Rename vertices by reversing ids.
    int n = a.complex.vertex_count();
    std::vector<std::vector<int>> faces;
    for (const auto& f : a.complex.maximal_faces()) {
      std::vector<int> g;
      for (int v : f) g.push_back(n - 1 - v);
      faces.push_back(std::move(g));
    }
    std::vector<int> coloring(a.coloring.rbegin(), a.coloring.rend());
    SimplicialComplex b(n, std::move(faces));
    CHECK(complexes_isomorphic(a.complex, a.coloring, b, coloring));
  }
  SUBCASE("hexagon and boolean square are not isomorphic") {
    ComplexWithColoring b = pseudocube_to_complex(gen_boolean_cube(2));
    CHECK_FALSE(complexes_isomorphic(a.complex, a.coloring, b.complex, b.coloring));
  }
  SUBCASE("color pattern matters") {
    // Rotating the 4-cycle realizes a color swap, so those stay isomorphic.
    SimplicialComplex c4 = cycle_complex(4);
    CHECK(complexes_isomorphic(c4, {0, 1, 0, 1}, c4, {1, 0, 1, 0}));
    // On a path the center vertex is forced, so swapped colors cannot match.
    SimplicialComplex path(3, {{0, 1}, {1, 2}});
    CHECK(complexes_isomorphic(path, {0, 1, 0}, path, {0, 1, 0}));
    CHECK_FALSE(complexes_isomorphic(path, {0, 1, 0}, path, {1, 0, 1}));
  }
}

TEST_CASE("torus construction") {
  TorusConstruction t = gen_torus_pseudocube();
  CHECK(t.complex.vertex_count() == 27);
  CHECK(t.complex.maximal_faces().size() == 54);
  GoodnessReport r = is_good(t.complex, t.coloring);
  CHECK(r.good);
  CHECK_FALSE(find_alternating_square(t.complex, t.coloring).has_value());
  CHECK(is_pseudo_cube(t.pseudocube));
}

TEST_CASE("star union") {
  ConceptClass hex = gen_hexagon();

  SUBCASE("single-block union keeps the dimensions") {
    ConceptClass su = star_union({hex});
    CHECK(natarajan_dimension(su).value == natarajan_dimension(hex).value);
    CHECK(ds_dimension(su).value == ds_dimension(hex).value);
  }
  SUBCASE("the star label never collides with block labels") {
    ConceptClass su = star_union({hex, gen_boolean_cube(2)});
    for (const Word& w : su.words()) {
      int zeros = 0;
      for (Label y : w) {
        if (y == 0) ++zeros;
      }
      CHECK(zeros >= 2);  // each word is starred outside its 2-coordinate block
    }
  }
  SUBCASE("natarajan dimension of a union is the max over blocks") {
    std::mt19937_64 rng(79);
    for (int round = 0; round < 12; ++round) {
      ConceptClass a = testing::random_pseudocube(rng, 1 + static_cast<int>(rng() % 2), 20);
      ConceptClass b = testing::random_pseudocube(rng, 1 + static_cast<int>(rng() % 2), 20);
      ConceptClass su = star_union({a, b});
      int expect = std::max(natarajan_dimension(a).value, natarajan_dimension(b).value);
      CHECK(natarajan_dimension(su).value == expect);
      CHECK(ds_dimension(su).value >= std::max(ds_dimension(a).value, ds_dimension(b).value));
    }
  }
}
