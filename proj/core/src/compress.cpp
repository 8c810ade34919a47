#include "mclab/compress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "mclab/dims.hpp"

namespace mclab {

// ---------------------------------------------------------------------------
// Formulas (logs base two)
// ---------------------------------------------------------------------------

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long result = 1;
  for (int i = 1; i <= k; ++i) {
    if (result > std::numeric_limits<long long>::max() / (n - i + 1)) {
      throw budget_error("binomial coefficient overflow");
    }
    result = result * (n - i + 1) / i;
  }
  return result;
}

double list_r_bound(int d, int t, int n) {
  return static_cast<double>(d + t + 1) / (t + 1) * (d + t) * std::log2(2.0 * n);
}

double menu_r_bound(int d_nat, int p, int n) {
  return 1000.0 * d_nat * std::log2(static_cast<double>(p)) * std::log2(2.0 * n);
}

double theorem_r_bound(int d, int d_nat, int n, int t) {
  double log2n = std::log2(2.0 * n);
  double inner = static_cast<double>(binomial(d + t + 1, t + 1)) * log2n;
  return (static_cast<double>(d + t + 1) / (t + 1) * (d + t) +
          1000.0 * d_nat * std::log2(inner)) *
         log2n;
}

int list_ell_planned(int d, int t, int n) {
  return static_cast<int>(std::floor(static_cast<double>(d + t + 1) / (t + 1) * std::log2(2.0 * n)));
}

int menu_p_param(int d, int t, int n) {
  long long p = static_cast<long long>(list_ell_planned(d, t, n)) * binomial(d + t, t);
  if (p > std::numeric_limits<int>::max()) throw budget_error("menu size bound overflow");
  return std::max(1, static_cast<int>(p));
}

// ---------------------------------------------------------------------------
// Seeded randomness (explicit derivation; no ambient entropy)
// ---------------------------------------------------------------------------

namespace {

std::mt19937_64 derive_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq sseq{seed, stream, index};
  return std::mt19937_64(sseq);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

std::size_t pick_index(std::mt19937_64& rng, std::size_t count) {
  return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(count)) % count;
}

std::size_t pick_weighted(std::mt19937_64& rng, const std::vector<double>& cumulative) {
  double u = uniform01(rng) * cumulative.back();
  auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
  std::size_t i = static_cast<std::size_t>(it - cumulative.begin());
  return std::min(i, cumulative.size() - 1);
}

// Size-d index subsets of {0,...,n-1} in lexicographic order.
std::vector<std::vector<int>> index_subsets(int n, int d) {
  std::vector<std::vector<int>> out;
  if (d > n || d < 0) return out;
  std::vector<int> idx(static_cast<std::size_t>(d));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    out.push_back(idx);
    int pos = d - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - d + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < d; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

// The per-block menu of the list learner, evaluated lazily: the set of
// point-learner outputs over all size-d subsamples of the block.
struct BlockMenu {
  const OigPredictor& pred;
  std::vector<Sample> subsamples;

  BlockMenu(const OigPredictor& predictor, const Sample& block, int d) : pred(predictor) {
    for (const auto& subset : index_subsets(static_cast<int>(block.size()), d)) {
      Sample sub;
      sub.reserve(static_cast<std::size_t>(d));
      for (int i : subset) sub.push_back(block[static_cast<std::size_t>(i)]);
      subsamples.push_back(std::move(sub));
    }
  }

  bool covers(const LabeledExample& e) const {
    for (const Sample& sub : subsamples) {
      if (pred.predict(sub, e.x) == e.y) return true;
    }
    return false;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Stage 1: list compression
// ---------------------------------------------------------------------------

CompressionResult list_compress(const ConceptClass& cls, const Sample& s, int t,
                                const CompressConfig& config) {
  const int n = static_cast<int>(s.size());
  if (n == 0) throw precondition_error("list compression of an empty sample");
  if (t < 0) throw precondition_error("list compression needs t >= 0");
  if (!is_realizable(cls, s)) throw precondition_error("sample is not realizable by the class");

  const int d = config.ds_bound ? *config.ds_bound : ds_dimension(cls).value;
  const int block = d + t;
  const int ell_planned = list_ell_planned(d, t, n);

  OigPredictor pred(cls);
  std::vector<char> covered(static_cast<std::size_t>(n), 0);
  int uncovered = n;

  Sample kept;
  std::vector<int> kept_idx;
  int rounds_used = 0;

  for (int round = 0; round < ell_planned && uncovered > 0; ++round) {
    // Distinct uncovered example values, each with a representative position.
    std::map<LabeledExample, int> reps;
    for (int i = 0; i < n; ++i) {
      if (!covered[static_cast<std::size_t>(i)]) reps.try_emplace(s[static_cast<std::size_t>(i)], i);
    }
    std::vector<std::pair<LabeledExample, int>> alphabet(reps.begin(), reps.end());

    Sample chosen;
    std::vector<int> chosen_idx;
    bool found = false;

    auto coverage_of = [&](const Sample& blk) {
      BlockMenu menu(pred, blk, d);
      int cov = 0;
      for (int i = 0; i < n; ++i) {
        if (!covered[static_cast<std::size_t>(i)] && menu.covers(s[static_cast<std::size_t>(i)])) ++cov;
      }
      return cov;
    };
    auto accept = [&](const Sample& blk, const std::vector<int>& idx) {
      // Exact threshold: coverage >= (t+1)/(d+t+1) of what is uncovered.
      if (static_cast<long long>(coverage_of(blk)) * (d + t + 1) >=
          static_cast<long long>(t + 1) * uncovered) {
        chosen = blk;
        chosen_idx = idx;
        found = true;
      }
      return found;
    };

    double tuple_count = std::pow(static_cast<double>(alphabet.size()), block);
    if (tuple_count <= static_cast<double>(config.exhaustive_cap)) {
      // Exhaustive over value tuples, lex order; guaranteed to hit a block by
      // the averaging argument over i.i.d. draws from the uncovered examples.
      std::vector<int> odo(static_cast<std::size_t>(block), 0);
      while (!found) {
        Sample blk;
        std::vector<int> idx;
        for (int b = 0; b < block; ++b) {
          auto& [ex, pos] = alphabet[static_cast<std::size_t>(odo[static_cast<std::size_t>(b)])];
          blk.push_back(ex);
          idx.push_back(pos);
        }
        accept(blk, idx);
        int posn = block - 1;
        while (posn >= 0 && odo[static_cast<std::size_t>(posn)] == static_cast<int>(alphabet.size()) - 1) {
          odo[static_cast<std::size_t>(posn)] = 0;
          --posn;
        }
        if (posn < 0) break;
        ++odo[static_cast<std::size_t>(posn)];
      }
    } else {
      // Seeded draws weighted by multiplicity among uncovered positions.
      std::vector<int> positions;
      for (int i = 0; i < n; ++i) {
        if (!covered[static_cast<std::size_t>(i)]) positions.push_back(i);
      }
      auto rng = derive_rng(config.seed, 1, static_cast<std::uint64_t>(round));
      for (int c = 0; c < config.pool_size && !found; ++c) {
        Sample blk;
        std::vector<int> idx;
        for (int b = 0; b < block; ++b) {
          int pos = positions[pick_index(rng, positions.size())];
          blk.push_back(s[static_cast<std::size_t>(pos)]);
          idx.push_back(pos);
        }
        accept(blk, idx);
      }
    }

    if (!found) {
      throw verification_error("stage-1 cover round " + std::to_string(round) +
                               " found no block covering the required fraction (pool " +
                               (tuple_count <= static_cast<double>(config.exhaustive_cap)
                                    ? "exhaustive)"
                                    : "sampled)"));
    }

    BlockMenu menu(pred, chosen, d);
    for (int i = 0; i < n; ++i) {
      if (!covered[static_cast<std::size_t>(i)] && menu.covers(s[static_cast<std::size_t>(i)])) {
        covered[static_cast<std::size_t>(i)] = 1;
        --uncovered;
      }
    }
    kept.insert(kept.end(), chosen.begin(), chosen.end());
    kept_idx.insert(kept_idx.end(), chosen_idx.begin(), chosen_idx.end());
    ++rounds_used;
  }

  if (uncovered > 0) {
    throw verification_error("stage-1 cover incomplete: " + std::to_string(uncovered) +
                             " examples uncovered after " + std::to_string(ell_planned) + " rounds");
  }

  CompressionResult result;
  result.kept = std::move(kept);
  result.kept_source_indices = std::move(kept_idx);
  result.stage = CompressionStage::list;
  result.params.n = n;
  result.params.t = t;
  result.params.d = d;
  result.params.block1 = block;
  result.params.ell1 = std::max(rounds_used, block == 0 ? 1 : 0);
  result.params.p_param = menu_p_param(d, t, n);
  result.r_achieved = static_cast<long long>(result.kept.size());
  result.r_bound = list_r_bound(d, t, n);

  Menu mu = list_reconstruct(cls, result.kept, result.params);
  result.verified = true;
  for (const LabeledExample& e : s) {
    if (!mu.at(e.x).contains(e.y)) {
      result.verified = false;
      break;
    }
  }
  if (!result.verified) {
    throw verification_error("stage-1 reconstruction does not cover the input sample");
  }
  return result;
}

Menu list_reconstruct(const ConceptClass& cls, const Sample& kept, const CompressParams& params) {
  const int block = params.block1;
  int ell;
  if (block == 0) {
    if (!kept.empty()) throw precondition_error("kept sample should be empty for zero-size blocks");
    ell = params.ell1;
  } else {
    if (kept.size() % static_cast<std::size_t>(block) != 0) {
      throw precondition_error("kept size " + std::to_string(kept.size()) +
                               " is not a multiple of the block size " + std::to_string(block));
    }
    ell = static_cast<int>(kept.size()) / block;
    if (ell != params.ell1) {
      throw precondition_error("kept size implies " + std::to_string(ell) +
                               " blocks, header says " + std::to_string(params.ell1));
    }
  }

  OigPredictor pred(cls);
  Menu mu(std::max(1, params.p_param));
  for (int x = 0; x < cls.domain_size(); ++x) {
    std::set<Label> labels;
    for (int j = 0; j < ell; ++j) {
      Sample blk(kept.begin() + static_cast<std::ptrdiff_t>(j) * block,
                 kept.begin() + static_cast<std::ptrdiff_t>(j + 1) * block);
      BlockMenu menu_j(pred, blk, params.d);
      for (const Sample& sub : menu_j.subsamples) labels.insert(pred.predict(sub, x));
    }
    mu.assign(x, std::move(labels));
  }
  return mu;
}

// ---------------------------------------------------------------------------
// Dense two-phase simplex for the tiny game LPs
// ---------------------------------------------------------------------------

namespace {

// min c'x  s.t.  A x = b, x >= 0, with b >= 0.  Bland's rule.  Returns false
// when infeasible (unboundedness cannot happen in our game LPs).
struct Simplex {
  int rows, cols;
  std::vector<std::vector<double>> a;  // rows x (cols + artificials + rhs)
  std::vector<int> basis;
  static constexpr double kEps = 1e-9;

  Simplex(const std::vector<std::vector<double>>& a_in, const std::vector<double>& b,
          const std::vector<double>& c)
      : rows(static_cast<int>(a_in.size())), cols(static_cast<int>(c.size())) {
    a.assign(static_cast<std::size_t>(rows + 1), std::vector<double>(static_cast<std::size_t>(cols + rows + 1), 0.0));
    basis.resize(static_cast<std::size_t>(rows));
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a_in[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols + i)] = 1.0;  // artificial
      a[static_cast<std::size_t>(i)].back() = b[static_cast<std::size_t>(i)];
      basis[static_cast<std::size_t>(i)] = cols + i;
    }
    objective_c = c;
  }

  std::vector<double> objective_c;

  void pivot(int row, int col) {
    double pv = a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
    for (double& v : a[static_cast<std::size_t>(row)]) v /= pv;
    for (int i = 0; i <= rows; ++i) {
      if (i == row) continue;
      double factor = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
      if (std::abs(factor) < 1e-14) continue;
      for (std::size_t j = 0; j < a[static_cast<std::size_t>(i)].size(); ++j) {
        a[static_cast<std::size_t>(i)][j] -= factor * a[static_cast<std::size_t>(row)][j];
      }
    }
    basis[static_cast<std::size_t>(row)] = col;
  }

  // Runs phases over the current objective row (index rows).  `allowed` caps
  // the columns eligible to enter.
  bool optimize(int allowed_cols) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        if (a[static_cast<std::size_t>(rows)][static_cast<std::size_t>(j)] < -kEps) {
          enter = j;
          break;  // Bland: smallest index
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = 0.0;
      for (int i = 0; i < rows; ++i) {
        double coeff = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
        if (coeff > kEps) {
          double ratio = a[static_cast<std::size_t>(i)].back() / coeff;
          if (leave < 0 || ratio < best - kEps ||
              (ratio < best + kEps && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
            leave = i;
            best = ratio;
          }
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, enter);
    }
  }

  // Returns the optimum of c'x, or nullopt when infeasible.
  std::optional<std::vector<double>> solve(double* value) {
    // Phase 1: minimize the artificial sum.
    auto& obj = a[static_cast<std::size_t>(rows)];
    std::fill(obj.begin(), obj.end(), 0.0);
    for (int j = cols; j < cols + rows; ++j) obj[static_cast<std::size_t>(j)] = 1.0;
    for (int i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < obj.size(); ++j) obj[j] -= a[static_cast<std::size_t>(i)][j];
    }
    if (!optimize(cols + rows)) return std::nullopt;
    if (obj.back() < -1e-7) return std::nullopt;  // objective = -sum(artificials)
    // Drive leftover artificials out of the basis if possible.
    for (int i = 0; i < rows; ++i) {
      if (basis[static_cast<std::size_t>(i)] >= cols) {
        for (int j = 0; j < cols; ++j) {
          if (std::abs(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) > kEps) {
            pivot(i, j);
            break;
          }
        }
      }
    }
    // Phase 2.
    std::fill(obj.begin(), obj.end(), 0.0);
    for (int j = 0; j < cols; ++j) obj[static_cast<std::size_t>(j)] = objective_c[static_cast<std::size_t>(j)];
    for (int i = 0; i < rows; ++i) {
      int bj = basis[static_cast<std::size_t>(i)];
      double cb = bj < cols ? objective_c[static_cast<std::size_t>(bj)] : 0.0;
      if (cb != 0.0) {
        for (std::size_t j = 0; j < obj.size(); ++j) obj[j] -= cb * a[static_cast<std::size_t>(i)][j];
      }
    }
    if (!optimize(cols)) return std::nullopt;
    std::vector<double> x(static_cast<std::size_t>(cols), 0.0);
    for (int i = 0; i < rows; ++i) {
      if (basis[static_cast<std::size_t>(i)] < cols) {
        x[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] = a[static_cast<std::size_t>(i)].back();
      }
    }
    if (value) *value = -obj.back();
    return x;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Stage 2: the menu game
// ---------------------------------------------------------------------------

GameSolution solve_menu_game(const ConceptClass& cls, const Menu& mu, const Sample& s, int m,
                             const CompressConfig& config) {
  const int n = static_cast<int>(s.size());
  if (n == 0) throw precondition_error("menu game over an empty sample");
  if (m < 0) throw precondition_error("menu game needs m >= 0");
  if (!is_realizable(cls, s)) throw precondition_error("sample is not realizable by the class");
  if (!is_menu_realizable(s, mu)) throw precondition_error("sample is not realizable by the menu");

  MenuOigPredictor pred(cls, mu);

  // Distinct example values with representative positions.
  std::map<LabeledExample, int> reps;
  for (int i = 0; i < n; ++i) reps.try_emplace(s[static_cast<std::size_t>(i)], i);
  std::vector<LabeledExample> distinct;
  std::vector<int> rep_pos;
  for (const auto& [ex, pos] : reps) {
    distinct.push_back(ex);
    rep_pos.push_back(pos);
  }
  const int ecount = static_cast<int>(distinct.size());

  auto block_errors = [&](const std::vector<int>& positions) {
    Sample blk;
    blk.reserve(positions.size());
    for (int pos : positions) blk.push_back(s[static_cast<std::size_t>(pos)]);
    std::vector<char> err(static_cast<std::size_t>(ecount), 0);
    for (int i = 0; i < ecount; ++i) {
      err[static_cast<std::size_t>(i)] =
          pred.predict(blk, distinct[static_cast<std::size_t>(i)].x) != distinct[static_cast<std::size_t>(i)].y;
    }
    return err;
  };

  GameSolution out;

  // Exact LP on tiny instances.
  double blocks_exact = std::pow(static_cast<double>(ecount), m);
  if (n <= config.lp_max_sample && blocks_exact <= static_cast<double>(config.lp_block_cap)) {
    std::vector<std::vector<int>> blocks;  // tuples of representative positions
    std::vector<int> odo(static_cast<std::size_t>(m), 0);
    while (true) {
      std::vector<int> positions;
      positions.reserve(static_cast<std::size_t>(m));
      for (int b = 0; b < m; ++b) positions.push_back(rep_pos[static_cast<std::size_t>(odo[static_cast<std::size_t>(b)])]);
      blocks.push_back(std::move(positions));
      int posn = m - 1;
      while (posn >= 0 && odo[static_cast<std::size_t>(posn)] == ecount - 1) {
        odo[static_cast<std::size_t>(posn)] = 0;
        --posn;
      }
      if (posn < 0) break;
      ++odo[static_cast<std::size_t>(posn)];
    }
    const int bcount = static_cast<int>(blocks.size());
    std::vector<std::vector<char>> loss;
    loss.reserve(blocks.size());
    for (const auto& blk : blocks) loss.push_back(block_errors(blk));

    // Variables: P_1..P_B, v, slack_1..slack_E.
    // Rows: sum_T loss[T][i] P_T - v + s_i = 0 for each i; sum_T P_T = 1.
    const int vars = bcount + 1 + ecount;
    std::vector<std::vector<double>> mat(static_cast<std::size_t>(ecount + 1),
                                         std::vector<double>(static_cast<std::size_t>(vars), 0.0));
    std::vector<double> rhs(static_cast<std::size_t>(ecount + 1), 0.0);
    for (int i = 0; i < ecount; ++i) {
      for (int b = 0; b < bcount; ++b) {
        mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)] =
            static_cast<double>(loss[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)]);
      }
      mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(bcount)] = -1.0;
      mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(bcount + 1 + i)] = 1.0;
    }
    for (int b = 0; b < bcount; ++b) mat[static_cast<std::size_t>(ecount)][static_cast<std::size_t>(b)] = 1.0;
    rhs[static_cast<std::size_t>(ecount)] = 1.0;
    std::vector<double> c(static_cast<std::size_t>(vars), 0.0);
    c[static_cast<std::size_t>(bcount)] = 1.0;

    Simplex lp(mat, rhs, c);
    double value = 0.0;
    auto x = lp.solve(&value);
    if (!x) throw verification_error("menu game LP reported infeasible; this should not happen");

    for (int b = 0; b < bcount; ++b) {
      double pb = (*x)[static_cast<std::size_t>(b)];
      if (pb > 1e-12) out.mixture.push_back({blocks[static_cast<std::size_t>(b)], pb});
    }
    // Renormalize tiny drift and certify explicitly.
    double total = 0.0;
    for (auto& [blk, pb] : out.mixture) total += pb;
    for (auto& [blk, pb] : out.mixture) pb /= total;
    double certified = 0.0;
    for (int i = 0; i < ecount; ++i) {
      double err = 0.0;
      for (const auto& [blk, pb] : out.mixture) {
        err += pb * static_cast<double>(block_errors(blk)[static_cast<std::size_t>(i)]);
      }
      certified = std::max(certified, err);
    }
    out.value_bound = certified;
    out.used_lp = true;
    out.lp_value = value;
    return out;
  }

  // Multiplicative weights over the examples; Minnie's mixture is the uniform
  // average of the per-round best-response blocks.
  std::vector<double> weights(static_cast<std::size_t>(ecount), 1.0);
  std::vector<long long> cumulative_loss(static_cast<std::size_t>(ecount), 0);
  std::vector<std::vector<int>> chosen;
  double eta = std::min(1.0, std::sqrt(8.0 * std::log(std::max(2, ecount)) /
                                       static_cast<double>(config.mwu_max_rounds)));

  for (int round = 0; round < config.mwu_max_rounds; ++round) {
    std::vector<double> cum(static_cast<std::size_t>(ecount), 0.0);
    double acc = 0.0;
    for (int i = 0; i < ecount; ++i) {
      acc += weights[static_cast<std::size_t>(i)];
      cum[static_cast<std::size_t>(i)] = acc;
    }
    auto rng = derive_rng(config.seed, 2, static_cast<std::uint64_t>(round));

    std::vector<int> best_block;
    std::vector<char> best_err;
    double best_weighted = -1.0;
    for (int cand = 0; cand < config.mwu_pool; ++cand) {
      std::vector<int> positions;
      positions.reserve(static_cast<std::size_t>(m));
      for (int b = 0; b < m; ++b) {
        positions.push_back(rep_pos[pick_weighted(rng, cum)]);
      }
      std::vector<char> err = block_errors(positions);
      double weighted = 0.0;
      for (int i = 0; i < ecount; ++i) {
        weighted += weights[static_cast<std::size_t>(i)] * static_cast<double>(err[static_cast<std::size_t>(i)]);
      }
      weighted /= acc;
      if (best_weighted < 0 || weighted < best_weighted) {
        best_weighted = weighted;
        best_block = std::move(positions);
        best_err = std::move(err);
      }
    }

    chosen.push_back(best_block);
    for (int i = 0; i < ecount; ++i) {
      cumulative_loss[static_cast<std::size_t>(i)] += best_err[static_cast<std::size_t>(i)];
      weights[static_cast<std::size_t>(i)] *=
          std::exp(eta * static_cast<double>(best_err[static_cast<std::size_t>(i)]));
    }

    if ((round + 1) % config.certify_every == 0) {
      long long worst = *std::max_element(cumulative_loss.begin(), cumulative_loss.end());
      double value = static_cast<double>(worst) / static_cast<double>(round + 1);
      if (value <= 0.25 + config.epsilon) {
        // Aggregate duplicates into one mixture entry each.
        std::map<std::vector<int>, int> counts;
        for (const auto& blk : chosen) ++counts[blk];
        for (const auto& [blk, count] : counts) {
          out.mixture.push_back({blk, static_cast<double>(count) / static_cast<double>(chosen.size())});
        }
        out.value_bound = value;
        return out;
      }
    }
  }
  throw budget_error("menu game not certified within " + std::to_string(config.mwu_max_rounds) +
                     " rounds");
}

// ---------------------------------------------------------------------------
// Stage 2: menu compression
// ---------------------------------------------------------------------------

namespace {

Word plurality_hypothesis(const MenuOigPredictor& pred, const std::vector<Sample>& blocks) {
  const ConceptClass& cls = pred.concepts();
  Word h(static_cast<std::size_t>(cls.domain_size()), 0);
  for (int x = 0; x < cls.domain_size(); ++x) {
    std::map<Label, int> votes;
    for (const Sample& blk : blocks) ++votes[pred.predict(blk, x)];
    // Plurality with ties to the smallest label: map order delivers that.
    Label best = -1;
    int best_count = -1;
    for (const auto& [y, count] : votes) {
      if (count > best_count) {
        best = y;
        best_count = count;
      }
    }
    h[static_cast<std::size_t>(x)] = best;
  }
  return h;
}

}  // namespace

CompressionResult menu_compress(const ConceptClass& cls, const Menu& mu, const Sample& s,
                                const CompressConfig& config) {
  const int n = static_cast<int>(s.size());
  if (n == 0) throw precondition_error("menu compression of an empty sample");
  if (!is_realizable(cls, s)) throw precondition_error("sample is not realizable by the class");
  if (!is_menu_realizable(s, mu)) throw precondition_error("sample is not realizable by the menu");

  const int d_nat = config.nat_bound ? *config.nat_bound : natarajan_dimension(cls).value;
  const int p = mu.size_bound();
  const int m = static_cast<int>(std::ceil(100.0 * d_nat * std::log2(static_cast<double>(p))));
  const int ell2 = static_cast<int>(std::floor(8.0 * std::log2(2.0 * n)));

  GameSolution game = solve_menu_game(cls, mu, s, m, config);
  std::vector<double> cum;
  double acc = 0.0;
  for (const auto& [blk, pb] : game.mixture) {
    acc += pb;
    cum.push_back(acc);
  }

  MenuOigPredictor pred(cls, mu);
  for (int attempt = 0; attempt < config.retry_budget; ++attempt) {
    auto rng = derive_rng(config.seed, 3, static_cast<std::uint64_t>(attempt));
    std::vector<Sample> blocks;
    std::vector<int> indices;
    for (int j = 0; j < ell2; ++j) {
      const auto& positions = game.mixture[pick_weighted(rng, cum)].first;
      Sample blk;
      for (int pos : positions) {
        blk.push_back(s[static_cast<std::size_t>(pos)]);
        indices.push_back(pos);
      }
      blocks.push_back(std::move(blk));
    }
    Word h = plurality_hypothesis(pred, blocks);
    bool ok = true;
    for (const LabeledExample& e : s) {
      if (h[static_cast<std::size_t>(e.x)] != e.y) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    CompressionResult result;
    for (const Sample& blk : blocks) result.kept.insert(result.kept.end(), blk.begin(), blk.end());
    result.kept_source_indices = std::move(indices);
    result.stage = CompressionStage::menu;
    result.params.n = n;
    result.params.d_nat = d_nat;
    result.params.p_param = p;
    result.params.m = m;
    result.params.ell2 = ell2;
    result.r_achieved = static_cast<long long>(result.kept.size());
    result.r_bound = menu_r_bound(d_nat, p, n);
    result.verified = true;
    return result;
  }
  throw budget_error("plurality reconstruction not correct after " +
                     std::to_string(config.retry_budget) + " redraws");
}

Word menu_reconstruct(const ConceptClass& cls, const Menu& mu, const Sample& kept,
                      const CompressParams& params) {
  if (params.m < 0 || params.ell2 < 0 ||
      kept.size() != static_cast<std::size_t>(params.m) * static_cast<std::size_t>(params.ell2)) {
    throw precondition_error("kept size does not match m * ell2 from the header");
  }
  MenuOigPredictor pred(cls, mu);
  std::vector<Sample> blocks;
  for (int j = 0; j < params.ell2; ++j) {
    blocks.emplace_back(kept.begin() + static_cast<std::ptrdiff_t>(j) * params.m,
                        kept.begin() + static_cast<std::ptrdiff_t>(j + 1) * params.m);
  }
  return plurality_hypothesis(pred, blocks);
}

// ---------------------------------------------------------------------------
// Composition
// ---------------------------------------------------------------------------

CompressionResult compress_end_to_end(const ConceptClass& cls, const Sample& s, int t,
                                      const CompressConfig& config) {
  const int n = static_cast<int>(s.size());
  CompressionResult stage1 = list_compress(cls, s, t, config);
  Menu mu = list_reconstruct(cls, stage1.kept, stage1.params);

  CompressConfig cfg2 = config;
  cfg2.nat_bound = config.nat_bound ? config.nat_bound
                                    : std::optional<int>(natarajan_dimension(cls).value);
  CompressionResult stage2 = menu_compress(cls, mu, s, cfg2);

  CompressionResult result;
  result.kept = stage1.kept;
  result.kept.insert(result.kept.end(), stage2.kept.begin(), stage2.kept.end());
  result.kept_source_indices = stage1.kept_source_indices;
  result.kept_source_indices.insert(result.kept_source_indices.end(),
                                    stage2.kept_source_indices.begin(),
                                    stage2.kept_source_indices.end());
  result.stage = CompressionStage::combined;
  result.params = stage1.params;
  result.params.d_nat = stage2.params.d_nat;
  result.params.m = stage2.params.m;
  result.params.ell2 = stage2.params.ell2;
  result.r_achieved = static_cast<long long>(result.kept.size());
  result.r_bound = theorem_r_bound(result.params.d, result.params.d_nat, n, t);

  Word h = reconstruct(cls, result.kept, result.params);
  result.verified = true;
  for (const LabeledExample& e : s) {
    if (h[static_cast<std::size_t>(e.x)] != e.y) {
      result.verified = false;
      break;
    }
  }
  if (!result.verified) {
    throw verification_error("end-to-end reconstruction is wrong on the input sample");
  }
  return result;
}

Word reconstruct(const ConceptClass& cls, const Sample& kept, const CompressParams& params) {
  const std::size_t r1 = static_cast<std::size_t>(params.ell1) * static_cast<std::size_t>(params.block1);
  const std::size_t r2 = static_cast<std::size_t>(params.m) * static_cast<std::size_t>(params.ell2);
  if (kept.size() != r1 + r2) {
    throw precondition_error("kept size " + std::to_string(kept.size()) +
                             " does not match the header (r1=" + std::to_string(r1) +
                             ", r2=" + std::to_string(r2) + ")");
  }
  Sample kept1(kept.begin(), kept.begin() + static_cast<std::ptrdiff_t>(r1));
  Sample kept2(kept.begin() + static_cast<std::ptrdiff_t>(r1), kept.end());
  Menu mu = list_reconstruct(cls, kept1, params);
  return menu_reconstruct(cls, mu, kept2, params);
}

}  // namespace mclab
