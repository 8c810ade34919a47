#pragma once
// Finite permutation groups given by generators, coset complexes (the nerve
// of all cosets of designated subgroups), and the two-condition certificate
// that turns a group instance into a pseudo-cube with small Natarajan
// dimension.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mclab/dims.hpp"
#include "mclab/simplicial.hpp"
#include "mclab/types.hpp"

namespace mclab {

// A permutation of {0,...,degree-1} as its image table.
using Permutation = std::vector<int>;

Permutation identity_perm(int degree);
// (a * b)(x) = a(b(x)); b acts first.
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);
bool is_valid_permutation(const Permutation& p);

class PermGroup {
 public:
  // Breadth-first closure of the generators; throws budget_error when the
  // enumeration exceeds `max_elements`.
  static PermGroup generate(int degree, std::vector<Permutation> generators,
                            std::uint64_t max_elements = 1'000'000);

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<Permutation>& elements() const { return elements_; }  // sorted
  long long order() const { return static_cast<long long>(elements_.size()); }
  bool contains(const Permutation& p) const;
  int element_index(const Permutation& p) const;  // -1 when absent

 private:
  int degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
};

struct SubgroupSpec {
  std::vector<Permutation> generators;
};

struct CosetComplexResult {
  SimplicialComplex complex;
  std::vector<int> coloring;          // vertex -> subgroup index
  std::vector<std::vector<int>> vertex_cosets;  // vertex -> sorted element indices in F
};

// Vertices are the distinct cosets g·H_i (as element sets); for each g the
// set {g·H_1, ..., g·H_d} is a maximal face.  Coloring maps a coset of H_i
// to i.  Throws precondition_error when some subgroup generator lies outside
// the group.
CosetComplexResult coset_complex(const PermGroup& f, const std::vector<SubgroupSpec>& subgroups,
                                 std::uint64_t max_elements = 1'000'000);

struct PolishReport {
  // Condition 1 per subgroup: (intersection of the others) \ H_i non-empty,
  // with a witnessing permutation when it holds.
  std::vector<bool> condition1;
  std::vector<std::optional<Permutation>> condition1_witness;
  bool condition1_all = false;
  // Condition 2: the coset complex has no empty squares.
  bool no_empty_squares = false;
  std::optional<Square> empty_square;
  GoodnessReport goodness;
  CosetComplexResult complex;
  std::optional<ConceptClass> pseudocube;    // present when goodness holds
  std::optional<NatResult> natarajan;        // of the pseudo-cube
  bool certified = false;                    // both conditions + goodness
};

PolishReport check_polish_conditions(const PermGroup& f, const std::vector<SubgroupSpec>& subgroups,
                                     std::uint64_t max_elements = 1'000'000);

}  // namespace mclab
