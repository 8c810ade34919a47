#include "mclab/learn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "mclab/dims.hpp"

namespace mclab {

namespace {

// Canonical layout of the n+1 projection coordinates.  The points are sorted
// (test point after equal sample points), so every leave-one-out call on the
// same underlying n+1 examples builds the identical graph and hence shares
// one orientation.  That sharing is what makes the leave-one-out counting
// bounds hold sample-by-sample instead of just on average.
struct ProjectionLayout {
  std::vector<int> coords;          // sorted points, duplicates kept
  std::vector<int> sample_pos;      // position of sample entry i
  int test_pos = 0;                 // position of the test point
};

ProjectionLayout canonical_layout(const Sample& s, int x) {
  const int n = static_cast<int>(s.size());
  std::vector<int> order(static_cast<std::size_t>(n) + 1);
  std::iota(order.begin(), order.end(), 0);
  auto point_of = [&](int i) { return i == n ? x : s[static_cast<std::size_t>(i)].x; };
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (point_of(a) != point_of(b)) return point_of(a) < point_of(b);
    return a < b;
  });
  ProjectionLayout layout;
  layout.coords.resize(order.size());
  layout.sample_pos.resize(static_cast<std::size_t>(n));
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    int i = order[pos];
    layout.coords[pos] = point_of(i);
    if (i == n) {
      layout.test_pos = static_cast<int>(pos);
    } else {
      layout.sample_pos[static_cast<std::size_t>(i)] = static_cast<int>(pos);
    }
  }
  return layout;
}

// Prediction for the edge consistent with the sample labels, given the
// projected class in canonical layout.
Label predict_from_projection(const ConceptClass& proj, const Sample& s,
                              const ProjectionLayout& layout) {
  std::vector<int> consistent;
  for (int v = 0; v < proj.size(); ++v) {
    const Word& w = proj.word(v);
    bool ok = true;
    for (std::size_t i = 0; i < s.size() && ok; ++i) {
      ok = (w[static_cast<std::size_t>(layout.sample_pos[i])] == s[i].y);
    }
    if (ok) consistent.push_back(v);
  }
  if (consistent.empty()) {
    throw precondition_error("sample is not realizable by the (filtered) class");
  }
  // Consistent words agree at every sample position, so they are one edge in
  // the test direction; a singleton edge forces the prediction.
  if (consistent.size() == 1) {
    return proj.word(consistent[0])[static_cast<std::size_t>(layout.test_pos)];
  }
  OneInclusionGraph g(proj);
  OptimalOrientation opt = optimal_orientation(g);
  int edge = g.edge_at(consistent[0], layout.test_pos);
  return proj.word(opt.orientation.chosen(edge))[static_cast<std::size_t>(layout.test_pos)];
}

}  // namespace

Label oig_predict(const ConceptClass& cls, const Sample& s, int x) {
  check_sample_in_range(cls, s);
  if (x < 0 || x >= cls.domain_size()) {
    throw precondition_error("test point " + std::to_string(x) + " out of range");
  }
  ProjectionLayout layout = canonical_layout(s, x);
  ConceptClass proj = project(cls, layout.coords);
  return predict_from_projection(proj, s, layout);
}

Label menu_oig_predict(const ConceptClass& cls, const Menu& mu, const Sample& s, int x) {
  check_sample_in_range(cls, s);
  if (x < 0 || x >= cls.domain_size()) {
    throw precondition_error("test point " + std::to_string(x) + " out of range");
  }
  ProjectionLayout layout = canonical_layout(s, x);
  ConceptClass proj = project(cls, layout.coords);

  std::vector<Word> filtered;
  for (const Word& w : proj.words()) {
    bool ok = true;
    for (std::size_t pos = 0; pos < layout.coords.size() && ok; ++pos) {
      ok = mu.at(layout.coords[pos]).contains(w[pos]);
    }
    if (ok) filtered.push_back(w);
  }
  if (filtered.empty()) {
    throw precondition_error("menu filter leaves no consistent pattern");
  }
  ConceptClass menu_proj(proj.domain_size(), std::move(filtered));
  return predict_from_projection(menu_proj, s, layout);
}

Menu list_learn(const ConceptClass& cls, int t, const Sample& s, std::optional<int> ds_bound) {
  if (t < 0) throw precondition_error("list learner needs t >= 0");
  int d = ds_bound ? *ds_bound : ds_dimension(cls).value;
  if (static_cast<int>(s.size()) != d + t) {
    throw precondition_error("list learner needs a sample of size exactly d+t = " +
                             std::to_string(d + t) + ", got " + std::to_string(s.size()));
  }
  if (!is_realizable(cls, s)) {
    throw precondition_error("list learner input sample is not realizable");
  }

  // All size-d subsamples, in lexicographic order of index subsets.
  std::vector<Sample> subsamples;
  std::vector<int> idx(static_cast<std::size_t>(d));
  std::iota(idx.begin(), idx.end(), 0);
  const int n = d + t;
  while (true) {
    Sample sub;
    sub.reserve(static_cast<std::size_t>(d));
    for (int i : idx) sub.push_back(s[static_cast<std::size_t>(i)]);
    subsamples.push_back(std::move(sub));
    int pos = d - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - d + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < d; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }

  int p = static_cast<int>(subsamples.size());  // = C(d+t, t)
  Menu mu(p);
  for (int x = 0; x < cls.domain_size(); ++x) {
    std::set<Label> options;
    for (const Sample& sub : subsamples) options.insert(oig_predict(cls, sub, x));
    mu.assign(x, std::move(options));
  }
  return mu;
}

// ---------------------------------------------------------------------------
// Predictor plumbing
// ---------------------------------------------------------------------------

Label Predictor::predict(const Sample& s, int x) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find({s, x});
    if (it != cache_.end()) return it->second;
  }
  Label y = compute(s, x);
  std::lock_guard<std::mutex> lock(mutex_);
  cache_.emplace(std::make_pair(s, x), y);
  return y;
}

void OigPredictor::check_distribution(const FiniteDistribution& d) const {
  if (!distribution_is_realizable(cls_, d)) {
    throw precondition_error("distribution is not realizable by the class");
  }
}

void MenuOigPredictor::check_distribution(const FiniteDistribution& d) const {
  if (!distribution_is_realizable(cls_, d)) {
    throw precondition_error("distribution is not realizable by the class");
  }
  Sample support;
  for (const Atom& a : d.atoms()) {
    if (a.p > 0.0) support.push_back(a.example);
  }
  if (!is_menu_realizable(support, mu_)) {
    throw precondition_error("distribution is not realizable by the menu");
  }
}

int loo_bad_count(const Predictor& pred, const Sample& sprime) {
  int bad = 0;
  for (std::size_t i = 0; i < sprime.size(); ++i) {
    Sample rest;
    rest.reserve(sprime.size() - 1);
    for (std::size_t j = 0; j < sprime.size(); ++j) {
      if (j != i) rest.push_back(sprime[j]);
    }
    if (pred.predict(rest, sprime[i].x) != sprime[i].y) ++bad;
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Error estimation
// ---------------------------------------------------------------------------

namespace {

// Nearest fraction with denominator <= max_den (continued-fraction walk).
std::pair<long long, long long> rationalize(double p, long long max_den) {
  long long best_num = 0, best_den = 1;
  double best_err = std::abs(p);
  // Stern-Brocot style expansion.
  double x = p;
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    long long a = static_cast<long long>(std::floor(x));
    long long h2 = a * h1 + h0;
    long long k2 = a * k1 + k0;
    if (k2 > max_den || k2 <= 0) break;
    double err = std::abs(p - static_cast<double>(h2) / static_cast<double>(k2));
    if (err < best_err) {
      best_err = err;
      best_num = h2;
      best_den = k2;
    }
    if (err == 0.0) break;
    double frac = x - static_cast<double>(a);
    if (frac < 1e-15) break;
    x = 1.0 / frac;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
  }
  if (best_err > 1e-12) {
    throw precondition_error("exact mode requires probabilities within 1e-12 of fractions "
                             "with denominator <= " + std::to_string(max_den));
  }
  return {best_num, best_den};
}

using int128 = __int128;

long long int128_to_ll(int128 v) {
  if (v > static_cast<int128>(INT64_MAX) || v < static_cast<int128>(INT64_MIN)) {
    throw budget_error("exact error fraction exceeds 64 bits; use Monte Carlo mode");
  }
  return static_cast<long long>(v);
}

int128 gcd128(int128 a, int128 b) {
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

}  // namespace

Rational exact_expected_error(const Predictor& pred, const FiniteDistribution& d, int n,
                              Budget* budget) {
  pred.check_distribution(d);
  Budget local(Budget::default_limit());
  Budget& b = budget ? *budget : local;

  std::vector<Atom> atoms;
  for (const Atom& a : d.atoms()) {
    if (a.p > 0.0) atoms.push_back(a);
  }
  const int k = static_cast<int>(atoms.size());
  if (k == 0) throw precondition_error("distribution has empty support");

  double tuples = std::pow(static_cast<double>(k), n + 1);
  if (tuples > static_cast<double>(b.limit())) {
    throw budget_error("exact mode needs |support|^(n+1) = " + std::to_string(tuples) +
                       " enumerations, over the budget");
  }

  // Common denominator L for all atom probabilities; tuple weights are then
  // integers over L^(n+1).
  long long lcm = 1;
  std::vector<std::pair<long long, long long>> fracs;
  for (const Atom& a : atoms) {
    fracs.push_back(rationalize(a.p, 1'000'000));
    long long den = fracs.back().second;
    long long g = std::gcd(lcm, den);
    if (lcm / g > std::numeric_limits<long long>::max() / den) {
      throw budget_error("probability denominators too large for exact mode");
    }
    lcm = lcm / g * den;
  }
  std::vector<int128> weight;
  int128 weight_total = 0;
  for (auto [num, den] : fracs) {
    weight.push_back(static_cast<int128>(num) * (lcm / den));
    weight_total += weight.back();
  }
  if (weight_total != static_cast<int128>(lcm)) {
    throw precondition_error("probabilities do not sum to exactly 1 as rationals; "
                             "exact mode refused");
  }

  const int128 denom_cap = static_cast<int128>(1) << 120;
  int128 denom = 1;
  for (int i = 0; i < n + 1; ++i) {
    if (denom > denom_cap / lcm) {
      throw budget_error("probability denominators too large for exact mode");
    }
    denom *= lcm;
  }

  // Enumerate sample tuples (odometer over atom indices), then test atoms.
  std::vector<int> pick(static_cast<std::size_t>(n), 0);
  int128 bad_mass = 0;
  while (true) {
    b.charge(static_cast<std::uint64_t>(k));
    Sample s;
    s.reserve(static_cast<std::size_t>(n));
    int128 w_sample = 1;
    for (int i = 0; i < n; ++i) {
      s.push_back(atoms[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])].example);
      w_sample *= weight[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
    }
    for (int ti = 0; ti < k; ++ti) {
      const Atom& test = atoms[static_cast<std::size_t>(ti)];
      if (pred.predict(s, test.example.x) != test.example.y) {
        bad_mass += w_sample * weight[static_cast<std::size_t>(ti)];
      }
    }
    int pos = n - 1;
    while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == k - 1) {
      pick[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++pick[static_cast<std::size_t>(pos)];
  }

  int128 g = gcd128(bad_mass, denom);
  if (g > 0) {
    bad_mass /= g;
    denom /= g;
  }
  return Rational(int128_to_ll(bad_mass), int128_to_ll(denom));
}

double mc_error(const Predictor& pred, const FiniteDistribution& d, int n, long long trials,
                std::uint64_t seed, int threads) {
  pred.check_distribution(d);
  if (trials <= 0) throw precondition_error("Monte Carlo needs a positive trial count");

  std::vector<Atom> atoms;
  for (const Atom& a : d.atoms()) {
    if (a.p > 0.0) atoms.push_back(a);
  }
  std::vector<double> cumulative;
  double acc = 0.0;
  for (const Atom& a : atoms) {
    acc += a.p;
    cumulative.push_back(acc);
  }
  cumulative.back() = 1.0;

  auto draw = [&](std::mt19937_64& rng) -> const Atom& {
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t i = static_cast<std::size_t>(it - cumulative.begin());
    if (i >= atoms.size()) i = atoms.size() - 1;
    return atoms[i];
  };

  auto run_range = [&](long long from, long long to, long long* bad) {
    long long count = 0;
    for (long long trial = from; trial < to; ++trial) {
      std::seed_seq sseq{static_cast<std::uint64_t>(seed), static_cast<std::uint64_t>(trial)};
      std::mt19937_64 rng(sseq);
      Sample s;
      s.reserve(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) s.push_back(draw(rng).example);
      const Atom& test = draw(rng);
      if (pred.predict(s, test.example.x) != test.example.y) ++count;
    }
    *bad = count;
  };

  threads = std::max(1, threads);
  if (threads == 1) {
    long long bad = 0;
    run_range(0, trials, &bad);
    return static_cast<double>(bad) / static_cast<double>(trials);
  }
  std::vector<long long> bad(static_cast<std::size_t>(threads), 0);
  std::vector<std::thread> workers;
  long long chunk = (trials + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    long long from = w * chunk;
    long long to = std::min(trials, from + chunk);
    if (from >= to) break;
    workers.emplace_back(run_range, from, to, &bad[static_cast<std::size_t>(w)]);
  }
  for (auto& th : workers) th.join();
  long long total = std::accumulate(bad.begin(), bad.end(), 0LL);
  return static_cast<double>(total) / static_cast<double>(trials);
}

int oig_outdeg_bound(const ConceptClass& cls, const FiniteDistribution& d, int n, Budget* budget) {
  Budget local(Budget::default_limit());
  Budget& b = budget ? *budget : local;

  std::set<int> xs;
  for (const Atom& a : d.atoms()) {
    if (a.p > 0.0) xs.insert(a.example.x);
  }
  std::vector<int> points(xs.begin(), xs.end());
  const int k = static_cast<int>(points.size());
  if (k == 0) return 0;

  // Multisets of size n+1 over the support points; the optimal value is
  // invariant under permuting coordinates, so multisets cover all sequences.
  int best = 0;
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  counts[0] = n + 1;
  auto evaluate = [&](const std::vector<int>& c) {
    b.charge(static_cast<std::uint64_t>(cls.size()));
    std::vector<int> coords;
    for (int i = 0; i < k; ++i) {
      for (int r = 0; r < c[static_cast<std::size_t>(i)]; ++r) coords.push_back(points[static_cast<std::size_t>(i)]);
    }
    ConceptClass proj = project(cls, coords);
    best = std::max(best, optimal_orientation(OneInclusionGraph(proj)).max_out_degree);
  };
  // Enumerate compositions of n+1 into k parts.
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == k - 1) {
      counts[static_cast<std::size_t>(pos)] = left;
      evaluate(counts);
      return;
    }
    for (int take = 0; take <= left; ++take) {
      counts[static_cast<std::size_t>(pos)] = take;
      rec(pos + 1, left - take);
    }
  };
  rec(0, n + 1);
  return best;
}

}  // namespace mclab
