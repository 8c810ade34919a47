#pragma once
// JSON loaders and serializers for every file format the tools understand.
// Loaders validate all type invariants and name the offending record in the
// diagnostic.

#include <string>

#include <json.hpp>

#include "mclab/compress.hpp"
#include "mclab/dims.hpp"
#include "mclab/group.hpp"
#include "mclab/oig.hpp"
#include "mclab/shift.hpp"
#include "mclab/simplicial.hpp"
#include "mclab/types.hpp"

namespace mclab {

using json = nlohmann::json;

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

// {"domain_size": n, "hypotheses": [[int,...],...]}
ConceptClass concept_class_from_json(const json& j);
json concept_class_to_json(const ConceptClass& cls);

// [[x,y],...]
Sample sample_from_json(const json& j);
json sample_to_json(const Sample& s);

// {"atoms":[{"x":int,"y":int,"p":number},...]}
FiniteDistribution distribution_from_json(const json& j);
json distribution_to_json(const FiniteDistribution& d);

// {"p": int, "entries": {"<x>": [int,...]}}
Menu menu_from_json(const json& j);
json menu_to_json(const Menu& mu);

// {"vertices": n, "maximal_faces": [[int,...]], "coloring": [int,...]?}
struct ComplexFile {
  SimplicialComplex complex;
  std::optional<std::vector<int>> coloring;
};
ComplexFile complex_from_json(const json& j);
json complex_to_json(const SimplicialComplex& c, const std::optional<std::vector<int>>& coloring);

// {"degree": n, "generators": [[[cycle],...],...],
//  "subgroups": [{"generators": [...]}, ...]}
// Permutations are lists of cycles over 0-based points.
struct GroupFile {
  int degree = 0;
  std::vector<Permutation> generators;
  std::vector<SubgroupSpec> subgroups;
};
GroupFile group_from_json(const json& j);

// {"left": n, "right": m, "edges": [[u,v],...]}
BipartiteGraph bipartite_from_json(const json& j);

// Reports.
json dimension_report_to_json(const DimensionReport& report);
// {"edges":[{"dir":i,"members":[...],"chosen":v}], "max_outdeg":k}
json orientation_to_json(const OneInclusionGraph& g, const Orientation& sigma);
json shift_trace_to_json(const ShiftTrace& trace);
json compression_result_to_json(const CompressionResult& result);
json goodness_to_json(const GoodnessReport& report);
json polish_report_to_json(const PolishReport& report);

}  // namespace mclab
