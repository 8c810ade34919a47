#pragma once
// One-inclusion hypergraph of a concept class, orientation statistics, and
// orientation solvers (greedy peeling and exact minimum-max-out-degree).

#include <optional>
#include <vector>

#include "mclab/types.hpp"

namespace mclab {

struct OigEdge {
  int direction = 0;
  std::vector<int> members;  // vertex indices, ascending
};

// Vertices are the hypotheses of the class (by index); for each direction i
// the edges partition the vertex set into groups agreeing off coordinate i.
// Every vertex lies in exactly domain_size edges, one per direction, and
// every edge is non-empty.  Edge ids are ordered by (direction, off-pattern).
class OneInclusionGraph {
 public:
  explicit OneInclusionGraph(ConceptClass cls);

  const ConceptClass& concepts() const { return cls_; }
  int vertex_count() const { return cls_.size(); }
  int direction_count() const { return cls_.domain_size(); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<OigEdge>& edges() const { return edges_; }
  const OigEdge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }

  // The edge containing vertex v in the given direction.
  int edge_at(int v, int direction) const {
    return incidence_[static_cast<std::size_t>(v)][static_cast<std::size_t>(direction)];
  }

 private:
  ConceptClass cls_;
  std::vector<OigEdge> edges_;
  std::vector<std::vector<int>> incidence_;  // [vertex][direction] -> edge id
};

// Map from edge id to a member vertex.
class Orientation {
 public:
  Orientation() = default;
  explicit Orientation(std::vector<int> chosen) : chosen_(std::move(chosen)) {}

  int chosen(int edge_id) const { return chosen_[static_cast<std::size_t>(edge_id)]; }
  std::size_t size() const { return chosen_.size(); }
  const std::vector<int>& raw() const { return chosen_; }

 private:
  std::vector<int> chosen_;
};

int out_degree(const OneInclusionGraph& g, const Orientation& sigma, int v);

// Throws precondition_error if sigma picks a vertex outside some edge.
int max_out_degree(const OneInclusionGraph& g, const Orientation& sigma);

struct GreedyResult {
  bool success = false;
  Orientation orientation;        // valid only on success
  int stuck_vertex_count = 0;     // vertices left when no peel was possible
};

// Peeling construction: repeatedly remove a vertex with at most
// `degree_bound` incident non-singleton edges, orienting its current
// singleton edges toward it.  On success the result has max out-degree
// <= degree_bound.  Smallest-index vertex is removed first, so the result is
// deterministic.
GreedyResult greedy_orientation(const OneInclusionGraph& g, int degree_bound);

struct OptimalOrientation {
  Orientation orientation;
  int max_out_degree = 0;
};

// Exact minimizer of the maximum out-degree.  Feasibility of "max out-degree
// <= k" is an edge-to-vertex assignment problem with per-vertex intake lower
// bound (domain_size - k), solved by max-flow; k is binary searched.  Among
// optimal orientations, returns the lexicographically smallest assignment
// vector by (edge id, vertex id).
OptimalOrientation optimal_orientation(const OneInclusionGraph& g);

// avd: (sum of |e| over non-singleton edges) / |V|.
Rational avg_degree(const OneInclusionGraph& g);

// avd': (sum of |e|-1 over all edges) / |V|.
Rational shifting_avg_degree(const OneInclusionGraph& g);

}  // namespace mclab
