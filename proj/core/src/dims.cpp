#include "mclab/dims.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace mclab {

namespace {

// Visits strictly increasing index sequences of length k over [0, n) in
// lexicographic order until the callback returns true; returns whether any
// callback did.
bool for_each_increasing(int n, int k, const std::function<bool(const std::vector<int>&)>& fn);

}  // namespace

// ---------------------------------------------------------------------------
// Pseudo-cube predicate and peeling core
// ---------------------------------------------------------------------------

namespace {

// alive[v] marks surviving words; checks whether word v still has an
// i-neighbor among the living for every coordinate i.
bool has_all_neighbors(const ConceptClass& cls, const std::vector<char>& alive, int v) {
  const int n = cls.domain_size();
  const Word& w = cls.word(v);
  for (int i = 0; i < n; ++i) {
    bool found = false;
    for (int u = 0; u < cls.size() && !found; ++u) {
      if (!alive[static_cast<std::size_t>(u)] || u == v) continue;
      const Word& g = cls.word(u);
      if (g[static_cast<std::size_t>(i)] == w[static_cast<std::size_t>(i)]) continue;
      bool agrees = true;
      for (int j = 0; j < n; ++j) {
        if (j != i && g[static_cast<std::size_t>(j)] != w[static_cast<std::size_t>(j)]) {
          agrees = false;
          break;
        }
      }
      found = agrees;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

bool is_pseudo_cube(const ConceptClass& cls) {
  if (cls.empty()) return false;
  std::vector<char> alive(static_cast<std::size_t>(cls.size()), 1);
  for (int v = 0; v < cls.size(); ++v) {
    if (!has_all_neighbors(cls, alive, v)) return false;
  }
  return true;
}

ConceptClass pseudo_cube_core(const ConceptClass& cls) {
  std::vector<char> alive(static_cast<std::size_t>(cls.size()), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < cls.size(); ++v) {
      if (!alive[static_cast<std::size_t>(v)]) continue;
      if (!has_all_neighbors(cls, alive, v)) {
        alive[static_cast<std::size_t>(v)] = 0;
        changed = true;
      }
    }
  }
  std::vector<Word> kept;
  for (int v = 0; v < cls.size(); ++v) {
    if (alive[static_cast<std::size_t>(v)]) kept.push_back(cls.word(v));
  }
  return ConceptClass(cls.domain_size(), std::move(kept));
}

// ---------------------------------------------------------------------------
// Increasing-sequence enumeration
// ---------------------------------------------------------------------------

namespace {

bool for_each_increasing_impl(int n, int k, std::vector<int>& buf,
                              const std::function<bool(const std::vector<int>&)>& fn) {
  if (static_cast<int>(buf.size()) == k) return fn(buf);
  int start = buf.empty() ? 0 : buf.back() + 1;
  for (int c = start; c < n; ++c) {
    // Not enough room to finish the sequence from here.
    if (n - c < k - static_cast<int>(buf.size())) break;
    buf.push_back(c);
    if (for_each_increasing_impl(n, k, buf, fn)) return true;
    buf.pop_back();
  }
  return false;
}

bool for_each_increasing(int n, int k, const std::function<bool(const std::vector<int>&)>& fn) {
  std::vector<int> buf;
  buf.reserve(static_cast<std::size_t>(k));
  return for_each_increasing_impl(n, k, buf, fn);
}

}  // namespace

// ---------------------------------------------------------------------------
// DS dimension
// ---------------------------------------------------------------------------

DsResult ds_dimension(const ConceptClass& cls, Budget* budget) {
  if (cls.empty()) throw precondition_error("DS dimension of the empty class is undefined");
  Budget local(Budget::default_limit());
  Budget& b = budget ? *budget : local;

  DsResult result;
  for (int k = 1; k <= cls.domain_size(); ++k) {
    bool found = for_each_increasing(cls.domain_size(), k, [&](const std::vector<int>& s) {
      b.charge(static_cast<std::uint64_t>(cls.size()));
      ConceptClass proj = project(cls, s);
      if (!pseudo_cube_core(proj).empty()) {
        result = {k, s};
        return true;
      }
      return false;
    });
    if (!found) break;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Natarajan dimension
// ---------------------------------------------------------------------------

namespace {

// Depth-first search for pointwise-distinct f,g realizing every mixture.
// At depth i the projection words are split across the 2^i prefix patterns;
// a pattern with no remaining words prunes the branch.
struct NatSearch {
  const ConceptClass& proj;  // class projected to the candidate coords
  Budget& budget;
  int k;
  Word f, g;

  bool extend(int depth, const std::vector<std::vector<int>>& buckets) {
    if (depth == k) return true;
    // Candidate (a, b) pairs at this coordinate, drawn from the projection.
    std::set<Label> seen;
    for (const auto& bucket : buckets) {
      for (int w : bucket) seen.insert(proj.word(w)[static_cast<std::size_t>(depth)]);
    }
    std::vector<Label> symbols(seen.begin(), seen.end());
    for (std::size_t ai = 0; ai < symbols.size(); ++ai) {
      for (std::size_t bi = ai + 1; bi < symbols.size(); ++bi) {
        budget.charge();
        Label a = symbols[ai];
        Label bb = symbols[bi];
        std::vector<std::vector<int>> next;
        next.reserve(buckets.size() * 2);
        bool viable = true;
        for (const auto& bucket : buckets) {
          std::vector<int> take_a, take_b;
          for (int w : bucket) {
            budget.charge();
            Label y = proj.word(w)[static_cast<std::size_t>(depth)];
            if (y == a) take_a.push_back(w);
            else if (y == bb) take_b.push_back(w);
          }
          if (take_a.empty() || take_b.empty()) {
            viable = false;
            break;
          }
          next.push_back(std::move(take_a));
          next.push_back(std::move(take_b));
        }
        if (!viable) continue;
        f[static_cast<std::size_t>(depth)] = a;
        g[static_cast<std::size_t>(depth)] = bb;
        if (extend(depth + 1, next)) return true;
      }
    }
    return false;
  }
};

bool natarajan_shatters(const ConceptClass& cls, const std::vector<int>& coords, Budget& budget,
                        Word& f_out, Word& g_out) {
  ConceptClass proj = project(cls, coords);
  int k = static_cast<int>(coords.size());
  if (proj.size() < (1 << k)) return false;  // needs 2^k distinct patterns
  NatSearch search{proj, budget, k, Word(static_cast<std::size_t>(k)), Word(static_cast<std::size_t>(k))};
  std::vector<std::vector<int>> root(1);
  for (int w = 0; w < proj.size(); ++w) root[0].push_back(w);
  if (search.extend(0, root)) {
    f_out = search.f;
    g_out = search.g;
    return true;
  }
  return false;
}

}  // namespace

NatResult natarajan_dimension(const ConceptClass& cls, Budget* budget) {
  Budget local(Budget::default_limit());
  Budget& b = budget ? *budget : local;

  NatResult result;
  for (int k = 1; k <= cls.domain_size(); ++k) {
    Word f, g;
    bool found = for_each_increasing(cls.domain_size(), k, [&](const std::vector<int>& s) {
      if (natarajan_shatters(cls, s, b, f, g)) {
        result.value = k;
        result.witness = NatarajanWitness{s, f, g};
        return true;
      }
      return false;
    });
    if (!found) break;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Exponential dimension
// ---------------------------------------------------------------------------

ExpResult exponential_dimension(const ConceptClass& cls, Budget* budget) {
  Budget local(Budget::default_limit());
  Budget& b = budget ? *budget : local;

  ExpResult result;  // |H|_()| = 1 >= 2^0, so 0 always holds for non-empty classes
  for (int k = 1; k <= cls.domain_size(); ++k) {
    long long need = 1LL << k;
    if (cls.size() < need) break;  // projections never exceed |H|
    bool found = for_each_increasing(cls.domain_size(), k, [&](const std::vector<int>& s) {
      b.charge(static_cast<std::uint64_t>(cls.size()));
      if (project(cls, s).size() >= need) {
        result = {k, s};
        return true;
      }
      return false;
    });
    if (!found) break;
  }
  return result;
}

// ---------------------------------------------------------------------------
// VC dimension
// ---------------------------------------------------------------------------

VcResult vc_dimension(const ConceptClass& cls, Budget* budget) {
  for (const Word& w : cls.words()) {
    for (Label y : w) {
      if (y != 0 && y != 1) {
        throw precondition_error("VC dimension requires labels in {0,1}");
      }
    }
  }
  Budget local(Budget::default_limit());
  Budget& b = budget ? *budget : local;

  VcResult result;
  for (int k = 1; k <= cls.domain_size(); ++k) {
    if (cls.size() < (1LL << k)) break;
    bool found = for_each_increasing(cls.domain_size(), k, [&](const std::vector<int>& s) {
      b.charge(static_cast<std::uint64_t>(cls.size()));
      if (project(cls, s).size() != (1 << k)) return false;
      result = {k, s};
      return true;
    });
    if (!found) break;
  }
  return result;
}

DimensionReport dimension_report(const ConceptClass& cls, Budget* budget) {
  DimensionReport report;
  bool binary = true;
  for (const Word& w : cls.words()) {
    for (Label y : w) {
      if (y != 0 && y != 1) binary = false;
    }
  }
  if (binary && !cls.empty()) report.vc = vc_dimension(cls, budget);
  report.natarajan = natarajan_dimension(cls, budget);
  report.ds = ds_dimension(cls, budget);
  report.exponential = exponential_dimension(cls, budget);
  return report;
}

}  // namespace mclab
