#include "mclab/json_io.hpp"

#include <fstream>

namespace mclab {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw parse_error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

namespace {

const json& require(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw parse_error(std::string(what) + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

int require_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw parse_error(std::string(what) + ": expected an integer");
  return j.get<int>();
}

}  // namespace

// ---------------------------------------------------------------------------
// Concept classes, samples, distributions, menus
// ---------------------------------------------------------------------------

ConceptClass concept_class_from_json(const json& j) {
  int n = require_int(require(j, "domain_size", "concept class"), "concept class domain_size");
  const json& hyp = require(j, "hypotheses", "concept class");
  if (!hyp.is_array()) throw parse_error("concept class: \"hypotheses\" must be an array");
  std::vector<Word> words;
  for (std::size_t i = 0; i < hyp.size(); ++i) {
    const json& row = hyp[i];
    if (!row.is_array()) {
      throw parse_error("concept class: hypothesis " + std::to_string(i) + " is not an array");
    }
    Word w;
    for (const json& v : row) {
      w.push_back(require_int(v, ("concept class: hypothesis " + std::to_string(i)).c_str()));
    }
    words.push_back(std::move(w));
  }
  return ConceptClass(n, std::move(words));
}

json concept_class_to_json(const ConceptClass& cls) {
  json j;
  j["domain_size"] = cls.domain_size();
  j["hypotheses"] = json::array();
  for (const Word& w : cls.words()) j["hypotheses"].push_back(w);
  return j;
}

Sample sample_from_json(const json& j) {
  if (!j.is_array()) throw parse_error("sample: expected an array of [x,y] pairs");
  Sample s;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != 2) {
      throw parse_error("sample: entry " + std::to_string(i) + " is not an [x,y] pair");
    }
    LabeledExample e{require_int(row[0], ("sample entry " + std::to_string(i)).c_str()),
                     require_int(row[1], ("sample entry " + std::to_string(i)).c_str())};
    if (e.x < 0 || e.y < 0) {
      throw parse_error("sample: entry " + std::to_string(i) + " has a negative field");
    }
    s.push_back(e);
  }
  return s;
}

json sample_to_json(const Sample& s) {
  json j = json::array();
  for (const LabeledExample& e : s) j.push_back({e.x, e.y});
  return j;
}

FiniteDistribution distribution_from_json(const json& j) {
  const json& atoms = require(j, "atoms", "distribution");
  if (!atoms.is_array()) throw parse_error("distribution: \"atoms\" must be an array");
  std::vector<Atom> out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const json& a = atoms[i];
    std::string what = "distribution atom " + std::to_string(i);
    Atom atom;
    atom.example.x = require_int(require(a, "x", what.c_str()), what.c_str());
    atom.example.y = require_int(require(a, "y", what.c_str()), what.c_str());
    const json& p = require(a, "p", what.c_str());
    if (!p.is_number()) throw parse_error(what + ": \"p\" must be a number");
    atom.p = p.get<double>();
    out.push_back(atom);
  }
  return FiniteDistribution(std::move(out));
}

json distribution_to_json(const FiniteDistribution& d) {
  json atoms = json::array();
  for (const Atom& a : d.atoms()) {
    atoms.push_back({{"x", a.example.x}, {"y", a.example.y}, {"p", a.p}});
  }
  return json{{"atoms", atoms}};
}

Menu menu_from_json(const json& j) {
  int p = require_int(require(j, "p", "menu"), "menu size bound");
  const json& entries = require(j, "entries", "menu");
  if (!entries.is_object()) throw parse_error("menu: \"entries\" must be an object keyed by point");
  std::map<int, std::set<Label>> out;
  for (const auto& [key, labels] : entries.items()) {
    int x;
    try {
      std::size_t used = 0;
      x = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw parse_error("menu: entry key \"" + key + "\" is not an integer point");
    }
    if (!labels.is_array()) {
      throw parse_error("menu: entry \"" + key + "\" must be an array of labels");
    }
    std::set<Label> set;
    for (const json& v : labels) set.insert(require_int(v, ("menu entry " + key).c_str()));
    out[x] = std::move(set);
  }
  return Menu(p, std::move(out));
}

json menu_to_json(const Menu& mu) {
  json entries = json::object();
  for (const auto& [x, labels] : mu.entries()) {
    entries[std::to_string(x)] = std::vector<Label>(labels.begin(), labels.end());
  }
  return json{{"p", mu.size_bound()}, {"entries", entries}};
}

// ---------------------------------------------------------------------------
// Complexes and groups
// ---------------------------------------------------------------------------

ComplexFile complex_from_json(const json& j) {
  int n = require_int(require(j, "vertices", "complex"), "complex vertex count");
  const json& faces = require(j, "maximal_faces", "complex");
  if (!faces.is_array()) throw parse_error("complex: \"maximal_faces\" must be an array");
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const json& f = faces[i];
    if (!f.is_array()) throw parse_error("complex: face " + std::to_string(i) + " is not an array");
    std::vector<int> face;
    for (const json& v : f) face.push_back(require_int(v, ("complex face " + std::to_string(i)).c_str()));
    out.push_back(std::move(face));
  }
  ComplexFile file;
  file.complex = SimplicialComplex(n, std::move(out));
  if (j.contains("coloring")) {
    const json& col = j.at("coloring");
    if (!col.is_array()) throw parse_error("complex: \"coloring\" must be an array");
    std::vector<int> coloring;
    for (const json& v : col) coloring.push_back(require_int(v, "complex coloring"));
    if (static_cast<int>(coloring.size()) != n) {
      throw parse_error("complex: coloring covers " + std::to_string(coloring.size()) + " of " +
                        std::to_string(n) + " vertices");
    }
    file.coloring = std::move(coloring);
  }
  return file;
}

json complex_to_json(const SimplicialComplex& c, const std::optional<std::vector<int>>& coloring) {
  json j;
  j["vertices"] = c.vertex_count();
  j["maximal_faces"] = json::array();
  for (const auto& f : c.maximal_faces()) j["maximal_faces"].push_back(f);
  if (coloring) j["coloring"] = *coloring;
  return j;
}

namespace {

Permutation permutation_from_cycles(const json& cycles, int degree, const std::string& what) {
  if (!cycles.is_array()) throw parse_error(what + ": expected an array of cycles");
  Permutation p = identity_perm(degree);
  for (const json& cyc : cycles) {
    if (!cyc.is_array() || cyc.empty()) {
      throw parse_error(what + ": each cycle must be a non-empty array of points");
    }
    std::vector<int> points;
    for (const json& v : cyc) {
      int pt = require_int(v, what.c_str());
      if (pt < 0 || pt >= degree) {
        throw parse_error(what + ": point " + std::to_string(pt) + " outside [0," +
                          std::to_string(degree) + ")");
      }
      points.push_back(pt);
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
      int from = points[i];
      int to = points[(i + 1) % points.size()];
      if (p[static_cast<std::size_t>(from)] != from) {
        throw parse_error(what + ": point " + std::to_string(from) + " appears in two cycles");
      }
      p[static_cast<std::size_t>(from)] = to;
    }
  }
  if (!is_valid_permutation(p)) throw parse_error(what + ": cycles do not form a permutation");
  return p;
}

}  // namespace

GroupFile group_from_json(const json& j) {
  GroupFile file;
  file.degree = require_int(require(j, "degree", "group"), "group degree");
  const json& gens = require(j, "generators", "group");
  if (!gens.is_array()) throw parse_error("group: \"generators\" must be an array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    file.generators.push_back(
        permutation_from_cycles(gens[i], file.degree, "group generator " + std::to_string(i)));
  }
  const json& subs = require(j, "subgroups", "group");
  if (!subs.is_array()) throw parse_error("group: \"subgroups\" must be an array");
  for (std::size_t si = 0; si < subs.size(); ++si) {
    const json& sgens = require(subs[si], "generators", ("subgroup " + std::to_string(si)).c_str());
    if (!sgens.is_array()) {
      throw parse_error("subgroup " + std::to_string(si) + ": \"generators\" must be an array");
    }
    SubgroupSpec spec;
    for (std::size_t i = 0; i < sgens.size(); ++i) {
      spec.generators.push_back(permutation_from_cycles(
          sgens[i], file.degree,
          "subgroup " + std::to_string(si) + " generator " + std::to_string(i)));
    }
    file.subgroups.push_back(std::move(spec));
  }
  return file;
}

BipartiteGraph bipartite_from_json(const json& j) {
  BipartiteGraph g;
  g.left_count = require_int(require(j, "left", "bipartite graph"), "bipartite left count");
  g.right_count = require_int(require(j, "right", "bipartite graph"), "bipartite right count");
  const json& edges = require(j, "edges", "bipartite graph");
  if (!edges.is_array()) throw parse_error("bipartite graph: \"edges\" must be an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const json& e = edges[i];
    if (!e.is_array() || e.size() != 2) {
      throw parse_error("bipartite graph: edge " + std::to_string(i) + " is not a [u,v] pair");
    }
    g.edges.push_back({require_int(e[0], "bipartite edge"), require_int(e[1], "bipartite edge")});
  }
  return g;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

json dimension_report_to_json(const DimensionReport& report) {
  json j;
  j["natarajan"] = report.natarajan.value;
  j["ds"] = report.ds.value;
  j["exponential"] = report.exponential.value;
  json witnesses;
  if (report.natarajan.witness) {
    witnesses["natarajan"] = {{"coords", report.natarajan.witness->coords},
                              {"f", report.natarajan.witness->f},
                              {"g", report.natarajan.witness->g}};
  }
  if (!report.ds.witness.empty()) witnesses["ds"] = report.ds.witness;
  if (!report.exponential.witness.empty()) witnesses["exponential"] = report.exponential.witness;
  if (report.vc) {
    j["vc"] = report.vc->value;
    if (!report.vc->witness.empty()) witnesses["vc"] = report.vc->witness;
  }
  j["witnesses"] = witnesses;
  return j;
}

json orientation_to_json(const OneInclusionGraph& g, const Orientation& sigma) {
  json edges = json::array();
  for (int e = 0; e < g.edge_count(); ++e) {
    edges.push_back({{"dir", g.edge(e).direction},
                     {"members", g.edge(e).members},
                     {"chosen", sigma.chosen(e)}});
  }
  return json{{"edges", edges}, {"max_outdeg", max_out_degree(g, sigma)}};
}

json shift_trace_to_json(const ShiftTrace& trace) {
  json steps = json::array();
  for (const ShiftStep& st : trace.steps) {
    json s{{"direction", st.direction},
           {"changed", st.changed},
           {"label_sum_before", st.label_sum_before},
           {"label_sum_after", st.label_sum_after},
           {"avd_prime_before", st.avd_prime_before.str()},
           {"avd_prime_after", st.avd_prime_after.str()}};
    if (st.exp_dim_before) s["exp_dim_before"] = *st.exp_dim_before;
    if (st.exp_dim_after) s["exp_dim_after"] = *st.exp_dim_after;
    steps.push_back(std::move(s));
  }
  return json{{"steps", steps},
              {"final", concept_class_to_json(trace.final_class)},
              {"downward_closed", is_downward_closed(trace.final_class)}};
}

json compression_result_to_json(const CompressionResult& result) {
  const char* stage = result.stage == CompressionStage::list
                          ? "list"
                          : (result.stage == CompressionStage::menu ? "menu" : "combined");
  return json{{"stage", stage},
              {"kept", sample_to_json(result.kept)},
              {"kept_indices", result.kept_source_indices},
              {"r_achieved", result.r_achieved},
              {"r_bound", result.r_bound},
              {"verified", result.verified},
              {"params",
               {{"n", result.params.n},
                {"t", result.params.t},
                {"d", result.params.d},
                {"d_nat", result.params.d_nat},
                {"block1", result.params.block1},
                {"ell1", result.params.ell1},
                {"p_param", result.params.p_param},
                {"m", result.params.m},
                {"ell2", result.params.ell2}}}};
}

json goodness_to_json(const GoodnessReport& report) {
  json j{{"good", report.good}};
  if (!report.good) {
    j["failing_property"] = report.failing_property;
    j["detail"] = report.detail;
  }
  if (report.coloring) j["coloring"] = *report.coloring;
  return j;
}

json polish_report_to_json(const PolishReport& report) {
  json j;
  j["condition1"] = report.condition1;
  j["condition1_all"] = report.condition1_all;
  j["empty_squares"] = report.no_empty_squares ? 0 : 1;
  if (report.empty_square) {
    j["empty_square"] = std::vector<int>(report.empty_square->begin(), report.empty_square->end());
  }
  j["good"] = report.goodness.good;
  if (!report.goodness.good) j["goodness"] = goodness_to_json(report.goodness);
  j["vertices"] = report.complex.complex.vertex_count();
  j["maximal_faces"] = static_cast<int>(report.complex.complex.maximal_faces().size());
  j["coloring"] = report.complex.coloring;
  if (report.pseudocube) j["pseudocube"] = concept_class_to_json(*report.pseudocube);
  if (report.natarajan) j["natarajan"] = report.natarajan->value;
  j["certified"] = report.certified;
  return j;
}

}  // namespace mclab
