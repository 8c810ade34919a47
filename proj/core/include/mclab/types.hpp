#pragma once
// Core vocabulary: concept classes over a finite domain, labeled samples,
// menus, finite-support distributions.  Everything is immutable after
// construction and safe to share across threads.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mclab {

// Alphabet symbols are dense non-negative integers; external string labels
// get interned at load time.
using Label = int;
using Word = std::vector<Label>;

// ---------------------------------------------------------------------------
// Error categories.  The CLI maps these onto distinct exit codes.
// ---------------------------------------------------------------------------

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct verification_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-search check limit.  Searches charge one unit per elementary step
// (roughly: one word visited on behalf of one candidate).
class Budget {
 public:
  explicit Budget(std::uint64_t limit) : limit_(limit) {}

  void charge(std::uint64_t n = 1) {
    used_ += n;
    if (used_ > limit_) {
      throw budget_error("budget exceeded after " + std::to_string(used_) +
                         " checks (limit " + std::to_string(limit_) + ")");
    }
  }
  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

  // Default limit is 1e8 elementary checks; MCLAB_BUDGET overrides.
  static std::uint64_t default_limit();

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

// Exact fraction with overflow-checked 64-bit arithmetic.  Degree statistics
// and exact error enumeration need small exact rationals, nothing more.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d = 1);

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
};

// ---------------------------------------------------------------------------
// ConceptClass: a finite set of words (hypotheses) of equal length.
// Canonical form is lexicographically sorted and deduplicated.
// ---------------------------------------------------------------------------

class ConceptClass {
 public:
  ConceptClass();  // empty class over an empty domain
  ConceptClass(int domain_size, std::vector<Word> hypotheses);

  int domain_size() const { return n_; }
  int size() const { return static_cast<int>(words_.size()); }
  bool empty() const { return words_.empty(); }
  const std::vector<Word>& words() const { return words_; }
  const Word& word(int i) const { return words_[static_cast<std::size_t>(i)]; }
  bool contains(const Word& w) const;
  int index_of(const Word& w) const;  // -1 if absent

  // Distinct labels appearing anywhere in the class, sorted.
  std::vector<Label> used_labels() const;
  int alphabet_size() const { return static_cast<int>(used_labels().size()); }
  int max_label() const;  // -1 for the empty class

  // Relabels the used alphabet onto {0,...,p-1} preserving order.
  ConceptClass reinterned() const;

  bool operator==(const ConceptClass& o) const {
    return n_ == o.n_ && words_ == o.words_;
  }

 private:
  int n_ = 0;
  std::vector<Word> words_;  // sorted, unique
};

// The projection H|_S.  Repeats in `coords` are allowed; the result is
// deduplicated and lives over |coords| coordinates.
ConceptClass project(const ConceptClass& cls, std::span<const int> coords);

// ---------------------------------------------------------------------------
// Samples and menus.
// ---------------------------------------------------------------------------

struct LabeledExample {
  int x = 0;
  Label y = 0;
  auto operator<=>(const LabeledExample&) const = default;
};

// Ordered sequence; repeats allowed and order is meaningful.
using Sample = std::vector<LabeledExample>;

// A size-bounded map from domain points to label sets.  Points without an
// entry map to the empty set.
class Menu {
 public:
  explicit Menu(int size_bound);
  Menu(int size_bound, std::map<int, std::set<Label>> entries);

  int size_bound() const { return p_; }
  const std::set<Label>& at(int x) const;
  void assign(int x, std::set<Label> labels);  // validates |labels| <= p
  const std::map<int, std::set<Label>>& entries() const { return entries_; }

 private:
  int p_;
  std::map<int, std::set<Label>> entries_;
};

// ---------------------------------------------------------------------------
// Finite-support distributions over labeled examples.
// ---------------------------------------------------------------------------

struct Atom {
  LabeledExample example;
  double p = 0.0;
};

class FiniteDistribution {
 public:
  explicit FiniteDistribution(std::vector<Atom> atoms);  // validates

  const std::vector<Atom>& atoms() const { return atoms_; }
  int support_size() const { return static_cast<int>(atoms_.size()); }

  static FiniteDistribution uniform(const Sample& examples);

 private:
  std::vector<Atom> atoms_;
};

// ---------------------------------------------------------------------------
// Realizability predicates.
// ---------------------------------------------------------------------------

// True iff some hypothesis is consistent with every example of `s`.
bool is_realizable(const ConceptClass& cls, const Sample& s);

// True iff y is on x's menu for every (x, y) in `s`.
bool is_menu_realizable(const Sample& s, const Menu& mu);

// True iff some hypothesis is consistent with every positive-probability atom.
bool distribution_is_realizable(const ConceptClass& cls, const FiniteDistribution& d);

// Checks that every x index in `s` is a valid coordinate of `cls`.
void check_sample_in_range(const ConceptClass& cls, const Sample& s);

}  // namespace mclab
