#include "oracles.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "mclab/dims.hpp"

namespace mclab::testing {

// ---------------------------------------------------------------------------
// Orientation oracle
// ---------------------------------------------------------------------------

double oracle_orientation_count(const OneInclusionGraph& g) {
  double count = 1.0;
  for (const OigEdge& e : g.edges()) count *= static_cast<double>(e.members.size());
  return count;
}

int oracle_min_max_outdeg(const OneInclusionGraph& g) {
  const int e_count = g.edge_count();
  const int v_count = g.vertex_count();
  std::vector<int> pick(static_cast<std::size_t>(e_count), 0);
  int best = v_count * g.direction_count() + 1;
  while (true) {
    // Max out-degree of this orientation, counted from scratch.
    std::vector<int> in(static_cast<std::size_t>(v_count), 0);
    for (int e = 0; e < e_count; ++e) {
      ++in[static_cast<std::size_t>(g.edge(e).members[static_cast<std::size_t>(pick[static_cast<std::size_t>(e)])])];
    }
    int worst = 0;
    for (int v = 0; v < v_count; ++v) {
      worst = std::max(worst, g.direction_count() - in[static_cast<std::size_t>(v)]);
    }
    best = std::min(best, worst);

    int pos = e_count - 1;
    while (pos >= 0 &&
           pick[static_cast<std::size_t>(pos)] ==
               static_cast<int>(g.edge(pos).members.size()) - 1) {
      pick[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++pick[static_cast<std::size_t>(pos)];
  }
  return best;
}

// ---------------------------------------------------------------------------
// Pseudo-cube oracles
// ---------------------------------------------------------------------------

bool oracle_is_pseudo_cube(const ConceptClass& cls) {
  if (cls.empty()) return false;
  const int n = cls.domain_size();
  for (const Word& h : cls.words()) {
    for (int i = 0; i < n; ++i) {
      bool neighbor = false;
      for (const Word& g : cls.words()) {
        int diff = 0;
        for (int j = 0; j < n; ++j) {
          if (g[static_cast<std::size_t>(j)] != h[static_cast<std::size_t>(j)]) ++diff;
        }
        if (diff == 1 && g[static_cast<std::size_t>(i)] != h[static_cast<std::size_t>(i)]) {
          neighbor = true;
          break;
        }
      }
      if (!neighbor) return false;
    }
  }
  return true;
}

ConceptClass oracle_max_pseudocube_subclass(const ConceptClass& cls) {
  const int count = cls.size();
  if (count > 20) throw std::invalid_argument("oracle subset scan limited to 20 words");
  ConceptClass best;
  int best_size = 0;
  for (unsigned mask = 1; mask < (1u << count); ++mask) {
    std::vector<Word> subset;
    for (int w = 0; w < count; ++w) {
      if (mask & (1u << w)) subset.push_back(cls.word(w));
    }
    if (static_cast<int>(subset.size()) <= best_size) continue;
    ConceptClass candidate(cls.domain_size(), subset);
    if (oracle_is_pseudo_cube(candidate)) {
      best_size = candidate.size();
      best = std::move(candidate);
    }
  }
  return best_size == 0 ? ConceptClass(cls.domain_size(), {}) : best;
}

// ---------------------------------------------------------------------------
// Dimension oracles (plain subset scans)
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<int>> all_index_subsets(int n) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> coords;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) coords.push_back(i);
    }
    out.push_back(std::move(coords));
  }
  return out;
}

bool oracle_n_shatters(const ConceptClass& proj) {
  const int k = proj.domain_size();
  // Candidate label pairs per coordinate, by odometer; check all 2^k mixtures.
  std::vector<std::vector<Label>> symbols(static_cast<std::size_t>(k));
  for (const Word& w : proj.words()) {
    for (int i = 0; i < k; ++i) symbols[static_cast<std::size_t>(i)].push_back(w[static_cast<std::size_t>(i)]);
  }
  for (auto& s : symbols) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.size() < 2) return false;
  }
  std::vector<std::pair<std::size_t, std::size_t>> pick(static_cast<std::size_t>(k), {0, 1});
  while (true) {
    bool all_present = true;
    for (unsigned pattern = 0; pattern < (1u << k) && all_present; ++pattern) {
      Word w(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) {
        auto [a, b] = pick[static_cast<std::size_t>(i)];
        w[static_cast<std::size_t>(i)] =
            symbols[static_cast<std::size_t>(i)][(pattern >> i) & 1 ? b : a];
      }
      all_present = proj.contains(w);
    }
    if (all_present) return true;

    // Next pair assignment.
    int pos = k - 1;
    while (pos >= 0) {
      auto& [a, b] = pick[static_cast<std::size_t>(pos)];
      std::size_t limit = symbols[static_cast<std::size_t>(pos)].size();
      if (b + 1 < limit) {
        ++b;
        break;
      }
      if (a + 2 < limit) {
        ++a;
        b = a + 1;
        break;
      }
      a = 0;
      b = 1;
      --pos;
    }
    if (pos < 0) return false;
  }
}

}  // namespace

int oracle_natarajan(const ConceptClass& cls) {
  int best = 0;
  for (const auto& coords : all_index_subsets(cls.domain_size())) {
    if (static_cast<int>(coords.size()) <= best) continue;
    if (oracle_n_shatters(project(cls, coords))) best = static_cast<int>(coords.size());
  }
  return best;
}

int oracle_ds(const ConceptClass& cls) {
  int best = 0;
  for (const auto& coords : all_index_subsets(cls.domain_size())) {
    if (static_cast<int>(coords.size()) <= best) continue;
    if (!oracle_max_pseudocube_subclass(project(cls, coords)).empty()) {
      best = static_cast<int>(coords.size());
    }
  }
  return best;
}

int oracle_exponential(const ConceptClass& cls) {
  int best = 0;
  for (const auto& coords : all_index_subsets(cls.domain_size())) {
    long long need = 1LL << coords.size();
    if (project(cls, coords).size() >= need) {
      best = std::max(best, static_cast<int>(coords.size()));
    }
  }
  return best;
}

int oracle_vc(const ConceptClass& cls) {
  int best = 0;
  for (const auto& coords : all_index_subsets(cls.domain_size())) {
    if (project(cls, coords).size() == (1LL << coords.size())) {
      best = std::max(best, static_cast<int>(coords.size()));
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

ConceptClass random_class(std::mt19937_64& rng, int max_n, int max_p, int max_words) {
  int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_n));
  int p = 2 + static_cast<int>(rng() % static_cast<unsigned>(std::max(1, max_p - 1)));
  int words = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_words));
  std::vector<Word> ws;
  for (int w = 0; w < words; ++w) {
    Word word(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) word[static_cast<std::size_t>(i)] = static_cast<Label>(rng() % static_cast<unsigned>(p));
    ws.push_back(std::move(word));
  }
  return ConceptClass(n, std::move(ws));
}

ConceptClass product_class(const ConceptClass& a, const ConceptClass& b) {
  Label offset = a.max_label() + 1;
  std::vector<Word> words;
  for (const Word& wa : a.words()) {
    for (const Word& wb : b.words()) {
      Word w = wa;
      for (Label y : wb) w.push_back(y + offset);
      words.push_back(std::move(w));
    }
  }
  return ConceptClass(a.domain_size() + b.domain_size(), std::move(words));
}

ConceptClass random_pseudocube(std::mt19937_64& rng, int dim, int max_words) {
  // Product constructions give structured instances cheaply.
  auto structured = [&]() -> std::optional<ConceptClass> {
    ConceptClass square(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    ConceptClass hexagon(2, {{1, 2}, {3, 2}, {3, 4}, {5, 4}, {5, 6}, {1, 6}});
    ConceptClass line(1, {{0}, {1}});
    std::vector<ConceptClass> parts;
    int left = dim;
    while (left > 0) {
      if (left >= 2 && rng() % 2 == 0) {
        parts.push_back(rng() % 2 == 0 ? square : hexagon);
        left -= 2;
      } else {
        parts.push_back(line);
        left -= 1;
      }
    }
    ConceptClass out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out = product_class(out, parts[i]);
    if (out.size() > max_words) return std::nullopt;
    return out;
  };

  for (int attempt = 0; attempt < 200; ++attempt) {
    if (attempt % 3 == 2) {
      if (auto s = structured()) return *s;
      continue;
    }
    int p = 2 + static_cast<int>(rng() % 3);
    int words = std::min(max_words, 6 + static_cast<int>(rng() % 40));
    std::vector<Word> ws;
    for (int w = 0; w < words; ++w) {
      Word word(static_cast<std::size_t>(dim));
      for (int i = 0; i < dim; ++i) word[static_cast<std::size_t>(i)] = static_cast<Label>(rng() % static_cast<unsigned>(p));
      ws.push_back(std::move(word));
    }
    ConceptClass core = pseudo_cube_core(ConceptClass(dim, std::move(ws)));
    if (!core.empty() && core.size() <= max_words) return core;
  }
  throw std::runtime_error("random_pseudocube failed to produce an instance");
}

Sample random_realizable_sample(std::mt19937_64& rng, const ConceptClass& cls, int size) {
  const Word& target = cls.word(static_cast<int>(rng() % static_cast<unsigned>(cls.size())));
  Sample s;
  for (int i = 0; i < size; ++i) {
    int x = static_cast<int>(rng() % static_cast<unsigned>(cls.domain_size()));
    s.push_back({x, target[static_cast<std::size_t>(x)]});
  }
  return s;
}

}  // namespace mclab::testing
