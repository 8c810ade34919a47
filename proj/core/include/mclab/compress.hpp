#pragma once
// Two-stage sample compression: a greedy list-cover stage whose
// reconstruction is a union of list-learner menus, and a menu stage built on
// a zero-sum-game mixture with plurality reconstruction.  Every accepted
// result is certified by explicit verification against the input sample;
// probabilistic existence arguments only guide the search.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mclab/learn.hpp"
#include "mclab/types.hpp"

namespace mclab {

struct CompressConfig {
  std::uint64_t seed = 0;
  // Stage-1 candidate pools: exhaustive when (#distinct uncovered)^(block
  // size) fits, else this many seeded draws per round.
  std::uint64_t exhaustive_cap = 100'000;
  int pool_size = 256;
  // Menu-game solver.
  int lp_max_sample = 12;          // exact LP fallback only for |S| <= this
  std::uint64_t lp_block_cap = 20'000;
  int mwu_max_rounds = 512;
  int mwu_pool = 8;
  int certify_every = 8;
  double epsilon = 0.05;           // certification slack over 1/4
  int retry_budget = 64;           // stage-2 redraw attempts
  std::optional<int> ds_bound;     // skip ds_dimension when supplied
  std::optional<int> nat_bound;    // skip natarajan_dimension when supplied
};

// Reconstruction header; everything here is derived from (n, t, class
// constants) plus the stage-1 block count actually used, and is redundantly
// checked against |kept| on reconstruction.
struct CompressParams {
  int n = 0;
  int t = 0;
  int d = 0;       // DS dimension used
  int d_nat = 0;   // Natarajan dimension used
  int block1 = 0;  // d + t
  int ell1 = 0;    // stage-1 blocks kept (cover may stop early)
  int p_param = 0; // menu size bound handed to stage 2
  int m = 0;       // stage-2 block size
  int ell2 = 0;    // stage-2 block count
};

enum class CompressionStage { list, menu, combined };

struct CompressionResult {
  Sample kept;
  std::vector<int> kept_source_indices;  // positions into the input sample
  CompressionStage stage = CompressionStage::list;
  CompressParams params;
  long long r_achieved = 0;
  double r_bound = 0.0;
  bool verified = false;
};

struct GameSolution {
  // Mixture over stored subsamples, each as positions into the input sample.
  std::vector<std::pair<std::vector<int>, double>> mixture;
  double value_bound = 0.0;  // certified max over examples of mixture error
  bool used_lp = false;
  double lp_value = 0.0;     // exact game value when the LP path ran
};

// ---- Bound formulas (logs are base two throughout) ----
double list_r_bound(int d, int t, int n);
double menu_r_bound(int d_nat, int p, int n);
double theorem_r_bound(int d, int d_nat, int n, int t);
// Planned stage-1 block count and the menu size bound it implies.
int list_ell_planned(int d, int t, int n);
int menu_p_param(int d, int t, int n);
long long binomial(int n, int k);

// ---- Stage 1: list compression ----
// Greedy cover: each round keeps a block of d+t uncovered examples whose
// list-learner menu covers at least a (t+1)/(d+t+1) fraction of what is left.
CompressionResult list_compress(const ConceptClass& cls, const Sample& s, int t,
                                const CompressConfig& config);
// rho_1: union of the per-block list-learner menus.
Menu list_reconstruct(const ConceptClass& cls, const Sample& kept, const CompressParams& params);

// ---- Stage 2: menu compression ----
// A mixture over size-m subsamples certifying max-example error <= 1/4 +
// epsilon, by multiplicative weights with an exact LP fallback on tiny
// instances.
GameSolution solve_menu_game(const ConceptClass& cls, const Menu& mu, const Sample& s, int m,
                             const CompressConfig& config);
CompressionResult menu_compress(const ConceptClass& cls, const Menu& mu, const Sample& s,
                                const CompressConfig& config);
// rho_2: plurality of the per-block menu-learner hypotheses (ties: smallest
// label), evaluated over the whole domain.
Word menu_reconstruct(const ConceptClass& cls, const Menu& mu, const Sample& kept,
                      const CompressParams& params);

// ---- Composition ----
CompressionResult compress_end_to_end(const ConceptClass& cls, const Sample& s, int t,
                                      const CompressConfig& config);
// Replays rho_1 on the first ell1*block1 elements to get the menu, then
// rho_2 on the rest; a pure function of (kept, params).
Word reconstruct(const ConceptClass& cls, const Sample& kept, const CompressParams& params);

}  // namespace mclab
