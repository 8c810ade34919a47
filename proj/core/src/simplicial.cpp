#include "mclab/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "mclab/dims.hpp"

namespace mclab {

// ---------------------------------------------------------------------------
// SimplicialComplex
// ---------------------------------------------------------------------------

SimplicialComplex::SimplicialComplex(int vertex_count, std::vector<std::vector<int>> maximal_faces)
    : vertex_count_(vertex_count), faces_(std::move(maximal_faces)) {
  if (vertex_count_ < 0) throw parse_error("complex with negative vertex count");
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    auto& f = faces_[i];
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    if (f.empty()) throw parse_error("maximal face " + std::to_string(i) + " is empty");
    for (int v : f) {
      if (v < 0 || v >= vertex_count_) {
        throw parse_error("maximal face " + std::to_string(i) + " references vertex " +
                          std::to_string(v) + " outside [0," + std::to_string(vertex_count_) + ")");
      }
    }
  }
  std::sort(faces_.begin(), faces_.end());
  faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
  // Keep only the antichain of maximal faces.
  std::vector<std::vector<int>> kept;
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    bool contained = false;
    for (std::size_t j = 0; j < faces_.size() && !contained; ++j) {
      if (i == j || faces_[i].size() >= faces_[j].size()) continue;
      contained = std::includes(faces_[j].begin(), faces_[j].end(), faces_[i].begin(), faces_[i].end());
    }
    if (!contained) kept.push_back(faces_[i]);
  }
  faces_ = std::move(kept);
}

int SimplicialComplex::dimension() const {
  int dim = -1;
  for (const auto& f : faces_) dim = std::max(dim, static_cast<int>(f.size()) - 1);
  return dim;
}

bool SimplicialComplex::is_pure() const {
  for (const auto& f : faces_) {
    if (static_cast<int>(f.size()) - 1 != dimension()) return false;
  }
  return true;
}

std::vector<std::pair<int, int>> SimplicialComplex::skeleton_edges() const {
  std::set<std::pair<int, int>> edges;
  for (const auto& f : faces_) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (std::size_t j = i + 1; j < f.size(); ++j) edges.insert({f[i], f[j]});
    }
  }
  return {edges.begin(), edges.end()};
}

std::vector<std::vector<int>> SimplicialComplex::skeleton_adjacency() const {
  std::vector<std::set<int>> adj(static_cast<std::size_t>(vertex_count_));
  for (const auto& [u, v] : skeleton_edges()) {
    adj[static_cast<std::size_t>(u)].insert(v);
    adj[static_cast<std::size_t>(v)].insert(u);
  }
  std::vector<std::vector<int>> out(static_cast<std::size_t>(vertex_count_));
  for (int v = 0; v < vertex_count_; ++v) {
    out[static_cast<std::size_t>(v)] = {adj[static_cast<std::size_t>(v)].begin(),
                                        adj[static_cast<std::size_t>(v)].end()};
  }
  return out;
}

bool SimplicialComplex::has_skeleton_edge(int u, int v) const {
  if (u == v) return false;
  for (const auto& f : faces_) {
    if (std::binary_search(f.begin(), f.end(), u) && std::binary_search(f.begin(), f.end(), v)) {
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Goodness
// ---------------------------------------------------------------------------

namespace {

// Backtracking proper coloring with `colors` colors; deterministic order.
bool search_coloring(const std::vector<std::vector<int>>& adj, int colors, std::vector<int>& out) {
  const int n = static_cast<int>(adj.size());
  out.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  // Highest degree first keeps the search shallow on the dense instances.
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return adj[static_cast<std::size_t>(a)].size() > adj[static_cast<std::size_t>(b)].size();
  });
  std::function<bool(int)> rec = [&](int pos) -> bool {
    if (pos == n) return true;
    int v = order[static_cast<std::size_t>(pos)];
    for (int c = 0; c < colors; ++c) {
      bool ok = true;
      for (int u : adj[static_cast<std::size_t>(v)]) {
        if (out[static_cast<std::size_t>(u)] == c) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      out[static_cast<std::size_t>(v)] = c;
      if (rec(pos + 1)) return true;
      out[static_cast<std::size_t>(v)] = -1;
    }
    return false;
  };
  return rec(0);
}

}  // namespace

GoodnessReport is_good(const SimplicialComplex& c, std::optional<std::vector<int>> coloring) {
  GoodnessReport report;
  if (c.maximal_faces().empty()) {
    report.failing_property = "non-empty";
    report.detail = "complex has no faces";
    return report;
  }
  if (!c.is_pure()) {
    for (const auto& f : c.maximal_faces()) {
      if (static_cast<int>(f.size()) - 1 != c.dimension()) {
        report.failing_property = "pure";
        report.detail = "maximal face of size " + std::to_string(f.size()) +
                        " next to dimension " + std::to_string(c.dimension());
        return report;
      }
    }
  }

  const int colors = c.dimension() + 1;
  std::vector<int> r;
  if (coloring) {
    r = *coloring;
    if (static_cast<int>(r.size()) != c.vertex_count()) {
      report.failing_property = "coloring";
      report.detail = "supplied coloring covers " + std::to_string(r.size()) + " of " +
                      std::to_string(c.vertex_count()) + " vertices";
      return report;
    }
    for (const auto& [u, v] : c.skeleton_edges()) {
      if (r[static_cast<std::size_t>(u)] == r[static_cast<std::size_t>(v)]) {
        report.failing_property = "coloring";
        report.detail = "vertices " + std::to_string(u) + " and " + std::to_string(v) +
                        " are adjacent and share color " + std::to_string(r[static_cast<std::size_t>(u)]);
        return report;
      }
      for (int w : {u, v}) {
        if (r[static_cast<std::size_t>(w)] < 0 || r[static_cast<std::size_t>(w)] >= colors) {
          report.failing_property = "coloring";
          report.detail = "vertex " + std::to_string(w) + " colored outside [0," +
                          std::to_string(colors) + ")";
          return report;
        }
      }
    }
  } else if (!search_coloring(c.skeleton_adjacency(), colors, r)) {
    report.failing_property = "coloring";
    report.detail = "no proper coloring with " + std::to_string(colors) + " colors";
    return report;
  }

  // Replacement on maximal faces; sub-faces inherit it.  In a pure complex
  // replacement at (f, v) says a second maximal face contains f \ {v}.
  for (const auto& f : c.maximal_faces()) {
    for (int v : f) {
      std::vector<int> rest;
      for (int u : f) {
        if (u != v) rest.push_back(u);
      }
      int holders = 0;
      for (const auto& other : c.maximal_faces()) {
        if (std::includes(other.begin(), other.end(), rest.begin(), rest.end())) ++holders;
        if (holders >= 2) break;
      }
      if (holders < 2) {
        std::string face_str;
        for (int u : f) face_str += (face_str.empty() ? "" : ",") + std::to_string(u);
        report.failing_property = "replacement";
        report.detail = "no replacement for vertex " + std::to_string(v) + " in face {" +
                        face_str + "}";
        return report;
      }
    }
  }

  report.good = true;
  report.coloring = std::move(r);
  return report;
}

// ---------------------------------------------------------------------------
// Dictionary
// ---------------------------------------------------------------------------

ConceptClass complex_to_pseudocube(const SimplicialComplex& c, const std::vector<int>& coloring) {
  GoodnessReport g = is_good(c, coloring);
  if (!g.good) {
    throw precondition_error("complex is not good: " + g.failing_property + " (" + g.detail + ")");
  }
  const int d = c.dimension() + 1;
  std::vector<Word> words;
  for (const auto& f : c.maximal_faces()) {
    Word w(static_cast<std::size_t>(d), -1);
    for (int v : f) w[static_cast<std::size_t>(coloring[static_cast<std::size_t>(v)])] = v;
    for (Label y : w) {
      if (y < 0) {
        throw precondition_error("a maximal face misses a color; coloring is not proper on it");
      }
    }
    words.push_back(std::move(w));
  }
  ConceptClass cube(d, std::move(words));
  if (!is_pseudo_cube(cube)) {
    throw verification_error("complex-to-pseudocube output failed the pseudo-cube check");
  }
  return cube;
}

ComplexWithColoring pseudocube_to_complex(const ConceptClass& cube) {
  if (!is_pseudo_cube(cube)) {
    throw precondition_error("input class is not a pseudo-cube");
  }
  const int d = cube.domain_size();
  std::map<std::pair<int, Label>, int> vertex_id;  // (coordinate, label) -> id
  ComplexWithColoring out;
  for (const Word& w : cube.words()) {
    for (int i = 0; i < d; ++i) {
      auto key = std::make_pair(i, w[static_cast<std::size_t>(i)]);
      if (!vertex_id.contains(key)) {
        int id = static_cast<int>(vertex_id.size());
        vertex_id[key] = id;
      }
    }
  }
  out.coloring.resize(vertex_id.size());
  out.vertex_names.resize(vertex_id.size());
  for (const auto& [key, id] : vertex_id) {
    out.coloring[static_cast<std::size_t>(id)] = key.first;
    out.vertex_names[static_cast<std::size_t>(id)] = {key.second, key.first};
  }
  std::vector<std::vector<int>> faces;
  for (const Word& w : cube.words()) {
    std::vector<int> f;
    for (int i = 0; i < d; ++i) f.push_back(vertex_id.at({i, w[static_cast<std::size_t>(i)]}));
    faces.push_back(std::move(f));
  }
  out.complex = SimplicialComplex(static_cast<int>(vertex_id.size()), std::move(faces));
  GoodnessReport g = is_good(out.complex, out.coloring);
  if (!g.good) {
    throw verification_error("pseudocube-to-complex output failed the goodness check: " +
                             g.failing_property);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Squares
// ---------------------------------------------------------------------------

namespace {

template <typename AcceptOuter, typename AcceptInner>
std::optional<Square> find_square(const SimplicialComplex& c, AcceptOuter accept_outer,
                                  AcceptInner accept_inner) {
  auto adj = c.skeleton_adjacency();
  const int n = c.vertex_count();
  for (int v0 = 0; v0 < n; ++v0) {
    for (int v2 = v0 + 1; v2 < n; ++v2) {
      if (!accept_outer(v0, v2)) continue;
      std::vector<int> common;
      std::set_intersection(adj[static_cast<std::size_t>(v0)].begin(), adj[static_cast<std::size_t>(v0)].end(),
                            adj[static_cast<std::size_t>(v2)].begin(), adj[static_cast<std::size_t>(v2)].end(),
                            std::back_inserter(common));
      for (std::size_t a = 0; a < common.size(); ++a) {
        for (std::size_t b = a + 1; b < common.size(); ++b) {
          if (accept_inner(common[a], common[b])) {
            return Square{v0, common[a], v2, common[b]};
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Square> find_alternating_square(const SimplicialComplex& c,
                                              const std::vector<int>& coloring) {
  if (static_cast<int>(coloring.size()) != c.vertex_count()) {
    throw precondition_error("coloring size does not match vertex count");
  }
  return find_square(
      c,
      [&](int v0, int v2) { return coloring[static_cast<std::size_t>(v0)] == coloring[static_cast<std::size_t>(v2)]; },
      [&](int v1, int v3) { return coloring[static_cast<std::size_t>(v1)] == coloring[static_cast<std::size_t>(v3)]; });
}

std::optional<Square> find_empty_square(const SimplicialComplex& c) {
  return find_square(
      c, [&](int v0, int v2) { return !c.has_skeleton_edge(v0, v2); },
      [&](int v1, int v3) { return !c.has_skeleton_edge(v1, v3); });
}

// ---------------------------------------------------------------------------
// Bipartite dictionary
// ---------------------------------------------------------------------------

BipartiteCubeResult bipartite_to_pseudocube(const BipartiteGraph& g) {
  BipartiteCubeResult result;
  std::vector<int> left_deg(static_cast<std::size_t>(g.left_count), 0);
  std::vector<int> right_deg(static_cast<std::size_t>(g.right_count), 0);
  for (const auto& [u, v] : g.edges) {
    if (u < 0 || u >= g.left_count || v < 0 || v >= g.right_count) {
      throw parse_error("bipartite edge (" + std::to_string(u) + "," + std::to_string(v) +
                        ") out of range");
    }
    ++left_deg[static_cast<std::size_t>(u)];
    ++right_deg[static_cast<std::size_t>(v)];
  }
  for (int u = 0; u < g.left_count; ++u) {
    if (left_deg[static_cast<std::size_t>(u)] == 1) {
      result.diagnosis = "left vertex " + std::to_string(u) + " is a leaf";
      return result;
    }
  }
  for (int v = 0; v < g.right_count; ++v) {
    if (right_deg[static_cast<std::size_t>(v)] == 1) {
      result.diagnosis = "right vertex " + std::to_string(v) + " is a leaf";
      return result;
    }
  }
  if (g.edges.empty()) {
    result.diagnosis = "graph has no edges";
    return result;
  }
  // Right labels are offset so the two sides use disjoint alphabets.
  std::vector<Word> words;
  for (const auto& [u, v] : g.edges) {
    words.push_back({u, g.left_count + v});
  }
  result.cube = ConceptClass(2, std::move(words));
  result.ok = true;
  return result;
}

// ---------------------------------------------------------------------------
// Color-respecting isomorphism
// ---------------------------------------------------------------------------

namespace {

struct ReducedComplex {
  std::vector<std::vector<int>> faces;  // over re-indexed touched vertices
  std::vector<std::vector<int>> adj;
  std::vector<int> color;
  int n = 0;
};

ReducedComplex reduce(const SimplicialComplex& c, const std::vector<int>& coloring) {
  std::set<int> touched;
  for (const auto& f : c.maximal_faces()) touched.insert(f.begin(), f.end());
  std::map<int, int> remap;
  for (int v : touched) remap[v] = static_cast<int>(remap.size());
  ReducedComplex out;
  out.n = static_cast<int>(remap.size());
  out.color.resize(static_cast<std::size_t>(out.n));
  for (const auto& [v, id] : remap) out.color[static_cast<std::size_t>(id)] = coloring[static_cast<std::size_t>(v)];
  for (const auto& f : c.maximal_faces()) {
    std::vector<int> face;
    for (int v : f) face.push_back(remap.at(v));
    std::sort(face.begin(), face.end());
    out.faces.push_back(std::move(face));
  }
  std::sort(out.faces.begin(), out.faces.end());
  std::vector<std::set<int>> adj(static_cast<std::size_t>(out.n));
  for (const auto& f : out.faces) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (std::size_t j = i + 1; j < f.size(); ++j) {
        adj[static_cast<std::size_t>(f[i])].insert(f[j]);
        adj[static_cast<std::size_t>(f[j])].insert(f[i]);
      }
    }
  }
  for (auto& s : adj) out.adj.push_back({s.begin(), s.end()});
  return out;
}

// Joint iterative refinement over both graphs with one shared dictionary per
// round, so the resulting class ids are comparable across the two.
std::pair<std::vector<long long>, std::vector<long long>> refine_classes_joint(
    const ReducedComplex& ra, const ReducedComplex& rb) {
  auto initial = [](const ReducedComplex& rc) {
    std::vector<long long> cls(static_cast<std::size_t>(rc.n));
    for (int v = 0; v < rc.n; ++v) {
      cls[static_cast<std::size_t>(v)] =
          static_cast<long long>(rc.color[static_cast<std::size_t>(v)]) * 100000 +
          static_cast<long long>(rc.adj[static_cast<std::size_t>(v)].size());
    }
    return cls;
  };
  std::vector<long long> ca = initial(ra);
  std::vector<long long> cb = initial(rb);
  for (int round = 0; round < ra.n + rb.n; ++round) {
    std::map<std::pair<long long, std::vector<long long>>, long long> dict;
    auto pass = [&](const ReducedComplex& rc, const std::vector<long long>& cls) {
      std::vector<long long> next(static_cast<std::size_t>(rc.n));
      for (int v = 0; v < rc.n; ++v) {
        std::vector<long long> sig;
        for (int u : rc.adj[static_cast<std::size_t>(v)]) sig.push_back(cls[static_cast<std::size_t>(u)]);
        std::sort(sig.begin(), sig.end());
        auto key = std::make_pair(cls[static_cast<std::size_t>(v)], std::move(sig));
        auto it = dict.find(key);
        if (it == dict.end()) it = dict.emplace(std::move(key), static_cast<long long>(dict.size())).first;
        next[static_cast<std::size_t>(v)] = it->second;
      }
      return next;
    };
    std::vector<long long> na = pass(ra, ca);
    std::vector<long long> nb = pass(rb, cb);
    if (na == ca && nb == cb) break;
    ca = std::move(na);
    cb = std::move(nb);
  }
  return {ca, cb};
}

struct IsoSearch {
  const ReducedComplex& a;
  const ReducedComplex& b;
  const std::vector<long long>& cls_a;
  const std::vector<long long>& cls_b;
  std::vector<int> map_ab;
  std::vector<int> map_ba;
  long long nodes = 0;

  bool compatible(int va, int vb) {
    if (cls_a[static_cast<std::size_t>(va)] != cls_b[static_cast<std::size_t>(vb)]) return false;
    // Mapped neighbors of va must be exactly neighbors of vb.
    for (int u : a.adj[static_cast<std::size_t>(va)]) {
      int mapped = map_ab[static_cast<std::size_t>(u)];
      if (mapped >= 0 &&
          !std::binary_search(b.adj[static_cast<std::size_t>(vb)].begin(),
                              b.adj[static_cast<std::size_t>(vb)].end(), mapped)) {
        return false;
      }
    }
    // Non-edges must map to non-edges: a mapped pre-image adjacent to vb must
    // be adjacent to va.
    for (int u : b.adj[static_cast<std::size_t>(vb)]) {
      int pre = map_ba[static_cast<std::size_t>(u)];
      if (pre >= 0 && !std::binary_search(a.adj[static_cast<std::size_t>(pre)].begin(),
                                          a.adj[static_cast<std::size_t>(pre)].end(), va)) {
        return false;
      }
    }
    return true;
  }

  bool faces_match() {
    std::vector<std::vector<int>> mapped;
    for (const auto& f : a.faces) {
      std::vector<int> g;
      for (int v : f) g.push_back(map_ab[static_cast<std::size_t>(v)]);
      std::sort(g.begin(), g.end());
      mapped.push_back(std::move(g));
    }
    std::sort(mapped.begin(), mapped.end());
    return mapped == b.faces;
  }

  bool extend(int va) {
    if (++nodes > 10'000'000) throw budget_error("isomorphism search exceeded its node budget");
    if (va == a.n) return faces_match();
    for (int vb = 0; vb < b.n; ++vb) {
      if (map_ba[static_cast<std::size_t>(vb)] >= 0) continue;
      if (!compatible(va, vb)) continue;
      map_ab[static_cast<std::size_t>(va)] = vb;
      map_ba[static_cast<std::size_t>(vb)] = va;
      if (extend(va + 1)) return true;
      map_ab[static_cast<std::size_t>(va)] = -1;
      map_ba[static_cast<std::size_t>(vb)] = -1;
    }
    return false;
  }
};

}  // namespace

bool complexes_isomorphic(const SimplicialComplex& a, const std::vector<int>& coloring_a,
                          const SimplicialComplex& b, const std::vector<int>& coloring_b) {
  ReducedComplex ra = reduce(a, coloring_a);
  ReducedComplex rb = reduce(b, coloring_b);
  if (ra.n != rb.n || ra.faces.size() != rb.faces.size()) return false;

  auto [ca, cb] = refine_classes_joint(ra, rb);
  std::vector<long long> sa = ca, sb = cb;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;

  IsoSearch search{ra, rb, ca, cb,
                   std::vector<int>(static_cast<std::size_t>(ra.n), -1),
                   std::vector<int>(static_cast<std::size_t>(rb.n), -1),
                   0};
  return search.extend(0);
}

}  // namespace mclab
