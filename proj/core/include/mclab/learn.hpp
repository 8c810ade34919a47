#pragma once
// Transductive learners on one-inclusion graphs: the point learner, the
// menu-filtered point learner, the list learner, plus leave-one-out counting
// and exact / Monte-Carlo error estimation.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "mclab/oig.hpp"
#include "mclab/types.hpp"

namespace mclab {

// Predicts the label of x from a realizable sample: project onto the n+1
// points (laid out in canonical sorted order so that leave-one-out calls on
// a common underlying sample share one orientation), orient the
// one-inclusion graph optimally, and read the chosen vertex of the edge
// consistent with the sample labels.  Throws precondition_error when the
// consistent edge is empty (sample not realizable).
Label oig_predict(const ConceptClass& cls, const Sample& s, int x);

// Same, but the projected class is first filtered to words consistent with
// the menu at every projected coordinate, the test point included.  Throws
// precondition_error when the filter empties the class or the consistent
// edge.
Label menu_oig_predict(const ConceptClass& cls, const Menu& mu, const Sample& s, int x);

// The list learner: on a realizable sample of size exactly d+t, the menu
// collecting the point learner's outputs over all size-d subsamples.
// d defaults to the DS dimension of the class; pass `ds_bound` to skip that
// computation (correctness statements are then relative to the supplied d).
Menu list_learn(const ConceptClass& cls, int t, const Sample& s,
                std::optional<int> ds_bound = std::nullopt);

// Deterministic point predictor with an internal memo table (projections of
// the same sample/test pair repeat heavily in enumeration loops).
class Predictor {
 public:
  virtual ~Predictor() = default;

  Label predict(const Sample& s, int x) const;
  virtual const ConceptClass& concepts() const = 0;
  // Throws precondition_error unless the distribution satisfies this
  // learner's realizability requirements.
  virtual void check_distribution(const FiniteDistribution& d) const = 0;

 protected:
  virtual Label compute(const Sample& s, int x) const = 0;

 private:
  mutable std::map<std::pair<Sample, int>, Label> cache_;
  mutable std::mutex mutex_;
};

class OigPredictor final : public Predictor {
 public:
  explicit OigPredictor(ConceptClass cls) : cls_(std::move(cls)) {}
  const ConceptClass& concepts() const override { return cls_; }
  void check_distribution(const FiniteDistribution& d) const override;

 protected:
  Label compute(const Sample& s, int x) const override { return oig_predict(cls_, s, x); }

 private:
  ConceptClass cls_;
};

class MenuOigPredictor final : public Predictor {
 public:
  MenuOigPredictor(ConceptClass cls, Menu mu) : cls_(std::move(cls)), mu_(std::move(mu)) {}
  const ConceptClass& concepts() const override { return cls_; }
  const Menu& menu() const { return mu_; }
  void check_distribution(const FiniteDistribution& d) const override;

 protected:
  Label compute(const Sample& s, int x) const override {
    return menu_oig_predict(cls_, mu_, s, x);
  }

 private:
  ConceptClass cls_;
  Menu mu_;
};

// |{i : predict(S'_{-i}, x'_i) != y'_i}| over a realizable sample of size
// n+1, computed by n+1 predictor calls.
int loo_bad_count(const Predictor& pred, const Sample& sprime);

// Exact expected error of the learner with sample size n under D: enumerates
// all (S, (x,y)) in support^(n+1) with their probabilities.  Requires
// support^(n+1) within budget and probabilities that are small-denominator
// rationals (every probability within 1e-12 of a fraction with denominator
// <= 10^6).
Rational exact_expected_error(const Predictor& pred, const FiniteDistribution& d, int n,
                              Budget* budget = nullptr);

// Seeded, reproducible Monte-Carlo estimate of the same quantity.  Each trial
// derives its own generator from (seed, trial index), so the result does not
// depend on the thread count.
double mc_error(const Predictor& pred, const FiniteDistribution& d, int n, long long trials,
                std::uint64_t seed, int threads = 1);

// max over (n+1)-point sequences from the support of the optimal orientation
// value of the projection; the learner's expected error is at most this
// divided by n+1.
int oig_outdeg_bound(const ConceptClass& cls, const FiniteDistribution& d, int n,
                     Budget* budget = nullptr);

}  // namespace mclab
