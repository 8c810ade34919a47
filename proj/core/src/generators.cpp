#include "mclab/generators.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>

#include "mclab/dims.hpp"

namespace mclab {

ConceptClass gen_hexagon() {
  return ConceptClass(2, {{1, 2}, {3, 2}, {3, 4}, {5, 4}, {5, 6}, {1, 6}});
}

ConceptClass gen_boolean_cube(int d) {
  if (d < 0 || d > 20) throw precondition_error("boolean cube dimension out of [0,20]");
  std::vector<Word> words;
  for (int mask = 0; mask < (1 << d); ++mask) {
    Word w(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) w[static_cast<std::size_t>(i)] = (mask >> i) & 1;
    words.push_back(std::move(w));
  }
  return ConceptClass(d, std::move(words));
}

// ---------------------------------------------------------------------------
// Torus
// ---------------------------------------------------------------------------

namespace {

// Quotient of the triangular lattice by the vectors (a, skew) and (0, b).
// Vertices are canonical pairs (i mod a, adjusted j mod b); triangles are the
// up/down lattice triangles.  Coloring (i - j) mod 3 is well defined when
// 3 | b and a == skew (mod 3).
struct LatticeQuotient {
  int a, b, skew;

  int vertex(int i, int j) const {
    int k = i >= 0 ? i / a : -((-i + a - 1) / a);
    int ii = i - k * a;
    int jj = j - k * skew;
    jj %= b;
    if (jj < 0) jj += b;
    return ii * b + jj;
  }

  int color(int i, int j) const {
    int c = (i - j) % 3;
    return c < 0 ? c + 3 : c;
  }
};

TorusConstruction build_quotient(int a, int b, int skew) {
  LatticeQuotient q{a, b, skew};
  std::vector<std::vector<int>> faces;
  std::vector<int> coloring(static_cast<std::size_t>(a * b), -1);
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      coloring[static_cast<std::size_t>(q.vertex(i, j))] = q.color(i, j);
      faces.push_back({q.vertex(i, j), q.vertex(i + 1, j), q.vertex(i, j + 1)});
      faces.push_back({q.vertex(i + 1, j), q.vertex(i, j + 1), q.vertex(i + 1, j + 1)});
    }
  }
  TorusConstruction out;
  out.complex = SimplicialComplex(a * b, std::move(faces));
  out.coloring = std::move(coloring);
  return out;
}

std::string verify_torus(TorusConstruction& t) {
  if (t.complex.vertex_count() != 27) return "vertex count " + std::to_string(t.complex.vertex_count());
  if (t.complex.maximal_faces().size() != 54) {
    return "face count " + std::to_string(t.complex.maximal_faces().size());
  }
  GoodnessReport g = is_good(t.complex, t.coloring);
  if (!g.good) return "not good: " + g.failing_property;
  if (auto sq = find_alternating_square(t.complex, t.coloring)) {
    return "alternating square at " + std::to_string((*sq)[0]);
  }
  t.pseudocube = complex_to_pseudocube(t.complex, t.coloring);
  if (t.pseudocube.size() != 54) return "word count " + std::to_string(t.pseudocube.size());
  if (t.pseudocube.alphabet_size() != 27) {
    return "label count " + std::to_string(t.pseudocube.alphabet_size());
  }
  if (!is_pseudo_cube(t.pseudocube)) return "not a pseudo-cube";
  if (natarajan_dimension(t.pseudocube).value != 1) return "Natarajan dimension != 1";
  if (ds_dimension(t.pseudocube).value != 3) return "DS dimension != 3";
  return "";
}

}  // namespace

TorusConstruction gen_torus_pseudocube() {
  // 27-vertex quotients compatible with the 3-coloring; the first one that
  // passes every check wins.
  const int candidates[][3] = {{3, 9, 0}, {3, 9, 3}, {3, 9, 6}, {9, 3, 0}};
  std::string failures;
  for (const auto& c : candidates) {
    TorusConstruction t = build_quotient(c[0], c[1], c[2]);
    std::string err = verify_torus(t);
    if (err.empty()) return t;
    failures += " (" + std::to_string(c[0]) + "," + std::to_string(c[1]) + "," +
                std::to_string(c[2]) + "): " + err + ";";
  }
  throw verification_error("no torus quotient passed verification:" + failures);
}

// ---------------------------------------------------------------------------
// Tree classes
// ---------------------------------------------------------------------------

ConceptClass gen_tree_class(int branching, int depth, std::uint64_t max_words) {
  if (branching < 1 || depth < 0) {
    throw precondition_error("tree class needs branching >= 1 and depth >= 0");
  }
  std::uint64_t count = 1, level = 1;
  for (int d = 0; d < depth; ++d) {
    level *= static_cast<std::uint64_t>(branching);
    count += level;
    if (count > max_words) {
      throw budget_error("tree class would have more than " + std::to_string(max_words) + " words");
    }
  }

  std::vector<Word> words;
  Word root(static_cast<std::size_t>(branching), 0);
  words.push_back(root);
  std::deque<Word> frontier{root};
  Label fresh = 1;
  for (int d = 0; d < depth; ++d) {
    std::deque<Word> next;
    for (const Word& node : frontier) {
      for (int x = 0; x < branching; ++x) {
        Word child = node;
        child[static_cast<std::size_t>(x)] = fresh++;
        words.push_back(child);
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  return ConceptClass(branching, std::move(words));
}

// ---------------------------------------------------------------------------
// Star union
// ---------------------------------------------------------------------------

ConceptClass star_union(const std::vector<ConceptClass>& blocks) {
  if (blocks.empty()) throw precondition_error("star union of an empty list");
  int total_domain = 0;
  for (const ConceptClass& b : blocks) total_domain += b.domain_size();

  // Label 0 is the star; block alphabets are shifted past one another.
  std::vector<Label> offsets;
  Label next_offset = 1;
  for (const ConceptClass& b : blocks) {
    offsets.push_back(next_offset);
    next_offset += b.max_label() + 1;
  }

  std::vector<Word> words;
  int domain_offset = 0;
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const ConceptClass& b = blocks[bi];
    for (const Word& w : b.words()) {
      Word ext(static_cast<std::size_t>(total_domain), 0);
      for (int i = 0; i < b.domain_size(); ++i) {
        ext[static_cast<std::size_t>(domain_offset + i)] = w[static_cast<std::size_t>(i)] + offsets[bi];
      }
      words.push_back(std::move(ext));
    }
    domain_offset += b.domain_size();
  }
  return ConceptClass(total_domain, std::move(words));
}

}  // namespace mclab
