#pragma once
// Colorful simplicial complexes and the dictionary between pseudo-cubes and
// good complexes, plus square detection in the 1-skeleton.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mclab/types.hpp"

namespace mclab {

// Stored by its maximal faces (an antichain; contained faces are dropped at
// construction).  Downward closure is implicit.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  SimplicialComplex(int vertex_count, std::vector<std::vector<int>> maximal_faces);

  int vertex_count() const { return vertex_count_; }
  const std::vector<std::vector<int>>& maximal_faces() const { return faces_; }
  int dimension() const;  // max |f| - 1; -1 for the empty complex
  bool is_pure() const;

  // Unordered pairs {u,v} lying in some face, each as (u < v), sorted.
  std::vector<std::pair<int, int>> skeleton_edges() const;
  // Adjacency lists of the 1-skeleton.
  std::vector<std::vector<int>> skeleton_adjacency() const;
  bool has_skeleton_edge(int u, int v) const;

  bool operator==(const SimplicialComplex& o) const {
    return vertex_count_ == o.vertex_count_ && faces_ == o.faces_;
  }

 private:
  int vertex_count_ = 0;
  std::vector<std::vector<int>> faces_;  // each sorted; list sorted; antichain
};

struct GoodnessReport {
  bool good = false;
  std::string failing_property;  // empty when good
  std::string detail;
  std::optional<std::vector<int>> coloring;  // the validated or discovered coloring
};

// Checks purity, existence of a proper coloring with dim+1 colors (validated
// if supplied, searched otherwise), and replacement on maximal faces (subsets
// inherit it: a replacement vertex for a maximal face works for every face it
// contains).  The report names the first failing property with a witness.
GoodnessReport is_good(const SimplicialComplex& c,
                       std::optional<std::vector<int>> coloring = std::nullopt);

// Forward dictionary: each maximal face becomes the word listing its
// color-0,...,color-d vertices.  Requires a good complex and a proper
// coloring; the output is verified to be a pseudo-cube.
ConceptClass complex_to_pseudocube(const SimplicialComplex& c, const std::vector<int>& coloring);

struct ComplexWithColoring {
  SimplicialComplex complex;
  std::vector<int> coloring;
  // vertex id -> the (label, coordinate) pair it came from
  std::vector<std::pair<Label, int>> vertex_names;
};

// Backward dictionary: vertices are the used (label, coordinate) pairs, each
// word a maximal face, colored by coordinate.  Requires a pseudo-cube; the
// output is verified to be good.
ComplexWithColoring pseudocube_to_complex(const ConceptClass& cube);

using Square = std::array<int, 4>;  // v0 - v1 - v2 - v3 - v0

// 4-cycle whose opposite vertices share colors.
std::optional<Square> find_alternating_square(const SimplicialComplex& c,
                                              const std::vector<int>& coloring);
// 4-cycle with neither diagonal present in the 1-skeleton.
std::optional<Square> find_empty_square(const SimplicialComplex& c);

struct BipartiteGraph {
  int left_count = 0;
  int right_count = 0;
  std::vector<std::pair<int, int>> edges;  // (left index, right index)
};

struct BipartiteCubeResult {
  bool ok = false;
  ConceptClass cube;        // words (u, v) per edge; labels offset so sides are disjoint
  std::string diagnosis;    // names a leaf on failure
};

// B(G) = {(u, v) : {u,v} an edge}; a pseudo-cube iff no touched vertex has
// degree <= 1.
BipartiteCubeResult bipartite_to_pseudocube(const BipartiteGraph& g);

// Color-respecting isomorphism via iterative refinement backed by
// backtracking on ties.  Vertices missing from every maximal face are
// ignored.
bool complexes_isomorphic(const SimplicialComplex& a, const std::vector<int>& coloring_a,
                          const SimplicialComplex& b, const std::vector<int>& coloring_b);

}  // namespace mclab
