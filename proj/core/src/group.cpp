#include "mclab/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace mclab {

Permutation identity_perm(int degree) {
  Permutation p(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw precondition_error("composing permutations of different degree");
  Permutation out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[static_cast<std::size_t>(b[i])];
  return out;
}

Permutation inverse(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return out;
}

bool is_valid_permutation(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

PermGroup PermGroup::generate(int degree, std::vector<Permutation> generators,
                              std::uint64_t max_elements) {
  if (degree <= 0) throw parse_error("group degree must be positive");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (static_cast<int>(generators[i].size()) != degree || !is_valid_permutation(generators[i])) {
      throw parse_error("generator " + std::to_string(i) + " is not a permutation of degree " +
                        std::to_string(degree));
    }
  }
  std::set<Permutation> closure;
  std::deque<Permutation> frontier;
  Permutation id = identity_perm(degree);
  closure.insert(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    Permutation g = std::move(frontier.front());
    frontier.pop_front();
    for (const Permutation& s : generators) {
      Permutation next = compose(g, s);
      if (closure.insert(next).second) {
        if (closure.size() > max_elements) {
          throw budget_error("group enumeration exceeded " + std::to_string(max_elements) +
                             " elements");
        }
        frontier.push_back(std::move(next));
      }
    }
  }
  PermGroup group;
  group.degree_ = degree;
  group.generators_ = std::move(generators);
  group.elements_.assign(closure.begin(), closure.end());
  return group;
}

bool PermGroup::contains(const Permutation& p) const {
  return std::binary_search(elements_.begin(), elements_.end(), p);
}

int PermGroup::element_index(const Permutation& p) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
  if (it == elements_.end() || *it != p) return -1;
  return static_cast<int>(it - elements_.begin());
}

// ---------------------------------------------------------------------------
// Coset complexes
// ---------------------------------------------------------------------------

namespace {

// Element indices (into f.elements()) of the subgroup generated inside f.
std::vector<int> subgroup_elements(const PermGroup& f, const SubgroupSpec& spec,
                                   std::uint64_t max_elements, int which) {
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    if (!f.contains(spec.generators[i])) {
      throw precondition_error("subgroup " + std::to_string(which) + " generator " +
                               std::to_string(i) + " lies outside the group");
    }
  }
  PermGroup h = PermGroup::generate(f.degree(), spec.generators, max_elements);
  std::vector<int> idx;
  idx.reserve(static_cast<std::size_t>(h.order()));
  for (const Permutation& p : h.elements()) idx.push_back(f.element_index(p));
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

CosetComplexResult coset_complex(const PermGroup& f, const std::vector<SubgroupSpec>& subgroups,
                                 std::uint64_t max_elements) {
  if (subgroups.empty()) throw precondition_error("coset complex needs at least one subgroup");
  const int d = static_cast<int>(subgroups.size());

  std::vector<std::vector<int>> h_elements;
  for (int i = 0; i < d; ++i) {
    h_elements.push_back(subgroup_elements(f, subgroups[static_cast<std::size_t>(i)], max_elements, i));
  }

  // Deduplicate cosets by their element-index sets.
  std::map<std::vector<int>, int> coset_id;
  std::vector<int> coset_color;
  std::vector<std::vector<int>> coset_elements;
  std::set<std::vector<int>> faces;

  for (long long gi = 0; gi < f.order(); ++gi) {
    const Permutation& g = f.elements()[static_cast<std::size_t>(gi)];
    std::vector<int> face;
    for (int i = 0; i < d; ++i) {
      std::vector<int> coset;
      coset.reserve(h_elements[static_cast<std::size_t>(i)].size());
      for (int hi : h_elements[static_cast<std::size_t>(i)]) {
        coset.push_back(f.element_index(compose(g, f.elements()[static_cast<std::size_t>(hi)])));
      }
      std::sort(coset.begin(), coset.end());
      auto it = coset_id.find(coset);
      if (it == coset_id.end()) {
        it = coset_id.emplace(coset, static_cast<int>(coset_id.size())).first;
        coset_color.push_back(i);
        coset_elements.push_back(std::move(coset));
      }
      face.push_back(it->second);
    }
    std::sort(face.begin(), face.end());
    face.erase(std::unique(face.begin(), face.end()), face.end());
    faces.insert(std::move(face));
  }

  CosetComplexResult out;
  out.coloring = std::move(coset_color);
  out.vertex_cosets = std::move(coset_elements);
  out.complex = SimplicialComplex(static_cast<int>(coset_id.size()),
                                  std::vector<std::vector<int>>(faces.begin(), faces.end()));
  return out;
}

PolishReport check_polish_conditions(const PermGroup& f, const std::vector<SubgroupSpec>& subgroups,
                                     std::uint64_t max_elements) {
  PolishReport report;
  const int d = static_cast<int>(subgroups.size());

  std::vector<std::set<int>> h_sets;
  for (int i = 0; i < d; ++i) {
    auto v = subgroup_elements(f, subgroups[static_cast<std::size_t>(i)], max_elements, i);
    h_sets.emplace_back(v.begin(), v.end());
  }

  // Condition 1: (intersection of the other subgroups) \ H_i is non-empty.
  report.condition1.resize(static_cast<std::size_t>(d), false);
  report.condition1_witness.resize(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    std::set<int> inter;
    bool first = true;
    for (int j = 0; j < d; ++j) {
      if (j == i) continue;
      if (first) {
        inter = h_sets[static_cast<std::size_t>(j)];
        first = false;
      } else {
        std::set<int> next;
        std::set_intersection(inter.begin(), inter.end(), h_sets[static_cast<std::size_t>(j)].begin(),
                              h_sets[static_cast<std::size_t>(j)].end(), std::inserter(next, next.begin()));
        inter = std::move(next);
      }
    }
    if (first) {
      // d == 1: the intersection over an empty family is all of F.
      for (long long gi = 0; gi < f.order(); ++gi) inter.insert(static_cast<int>(gi));
    }
    for (int e : inter) {
      if (!h_sets[static_cast<std::size_t>(i)].contains(e)) {
        report.condition1[static_cast<std::size_t>(i)] = true;
        report.condition1_witness[static_cast<std::size_t>(i)] =
            f.elements()[static_cast<std::size_t>(e)];
        break;
      }
    }
  }
  report.condition1_all = std::all_of(report.condition1.begin(), report.condition1.end(),
                                      [](bool b) { return b; });

  report.complex = coset_complex(f, subgroups, max_elements);

  // Condition 2: no empty squares.
  report.empty_square = find_empty_square(report.complex.complex);
  report.no_empty_squares = !report.empty_square.has_value();

  report.goodness = is_good(report.complex.complex, report.complex.coloring);
  if (report.goodness.good) {
    report.pseudocube = complex_to_pseudocube(report.complex.complex, report.complex.coloring);
    report.natarajan = natarajan_dimension(*report.pseudocube);
  }
  report.certified = report.condition1_all && report.no_empty_squares && report.goodness.good;
  return report;
}

}  // namespace mclab
