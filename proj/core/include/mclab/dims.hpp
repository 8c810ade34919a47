#pragma once
// Exact shattering dimensions: VC, Natarajan, DS (via a pseudo-cube peeling
// core) and the exponential dimension, each with a witness.
//
// All witness searches range over strictly increasing index sequences and
// stop at the first length without a witness.  Both steps are justified:
//  * A repeated coordinate forces equal symbols at the two positions, which
//    kills N- and DS-shattering outright, and leaves projection sizes (hence
//    E-shattering evidence) unchanged relative to the deduplicated sequence.
//  * Shattering is monotone under subsequences for VC/N/DS; for the
//    exponential dimension, Shearer's inequality gives |H| < 2^{k+1} whenever
//    every k-subset projection has size < 2^k, so no (k+1)-witness can exist
//    once level k is empty.

#include <optional>
#include <vector>

#include "mclab/types.hpp"

namespace mclab {

struct NatarajanWitness {
  std::vector<int> coords;
  Word f;
  Word g;
};

struct DsResult {
  int value = 0;
  std::vector<int> witness;  // empty when value == 0
};

struct NatResult {
  int value = 0;
  std::optional<NatarajanWitness> witness;
};

struct ExpResult {
  int value = 0;
  std::vector<int> witness;
};

struct VcResult {
  int value = 0;
  std::vector<int> witness;
};

struct DimensionReport {
  std::optional<VcResult> vc;  // absent when labels are not all binary
  NatResult natarajan;
  DsResult ds;
  ExpResult exponential;
};

// True iff every word has, in every coordinate, a neighbor differing exactly
// there.  The empty class is not a pseudo-cube.
bool is_pseudo_cube(const ConceptClass& cls);

// Maximal sub-class that is a pseudo-cube, computed by repeatedly deleting
// words that lack an i-neighbor for some i.  Empty iff no pseudo-cube
// sub-class exists.  Idempotent, and contains every pseudo-cube sub-class of
// the input (the property is closed under unions).
ConceptClass pseudo_cube_core(const ConceptClass& cls);

// Largest n such that some length-n projection contains a pseudo-cube.
// Errors on the empty class; 0 for singletons.
DsResult ds_dimension(const ConceptClass& cls, Budget* budget = nullptr);

// Largest n admitting pointwise-distinct f,g whose 2^n mixtures all appear in
// the projection.
NatResult natarajan_dimension(const ConceptClass& cls, Budget* budget = nullptr);

// Largest n with a projection of size >= 2^n.
ExpResult exponential_dimension(const ConceptClass& cls, Budget* budget = nullptr);

// Binary classes only; throws precondition_error when a non-binary label
// appears.
VcResult vc_dimension(const ConceptClass& cls, Budget* budget = nullptr);

DimensionReport dimension_report(const ConceptClass& cls, Budget* budget = nullptr);

}  // namespace mclab
