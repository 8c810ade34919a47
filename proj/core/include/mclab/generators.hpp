#pragma once
// Reference constructions: the hexagon class, Boolean cubes, the triangulated
// torus, depth-truncated tree classes, and the star union.

#include <cstdint>
#include <vector>

#include "mclab/simplicial.hpp"
#include "mclab/types.hpp"

namespace mclab {

// The six-word class over two coordinates whose one-inclusion graph is a
// 6-cycle: {12, 32, 34, 54, 56, 16}.
ConceptClass gen_hexagon();

// {0,1}^d.
ConceptClass gen_boolean_cube(int d);

struct TorusConstruction {
  SimplicialComplex complex;   // 27 vertices, 54 triangles
  std::vector<int> coloring;   // proper 3-coloring
  ConceptClass pseudocube;     // 54 words over 3 coordinates, 27 labels
};

// Triangulated torus on 27 vertices whose triangles form a 3-dimensional
// pseudo-cube with Natarajan dimension 1.  The construction self-verifies
// (good complex, no alternating square, dimension counts) and tries
// alternative lattice quotients if one fails; throws verification_error when
// none passes.
TorusConstruction gen_torus_pseudocube();

// Depth-m truncation of the tree class over domain [k]: all-zeros root; each
// node at depth < m has k children, the child at x carrying a globally fresh
// label there.  Throws budget_error when the word count would exceed
// `max_words`.
ConceptClass gen_tree_class(int branching, int depth, std::uint64_t max_words = 1'000'000);

// Domains concatenated, label alphabets offset to be disjoint, every
// hypothesis extended by the star label 0 outside its home block.
ConceptClass star_union(const std::vector<ConceptClass>& blocks);

}  // namespace mclab
