#include "mclab/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace mclab {

std::uint64_t Budget::default_limit() {
  static const std::uint64_t limit = [] {
    if (const char* env = std::getenv("MCLAB_BUDGET")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
    }
    return static_cast<std::uint64_t>(100'000'000ULL);
  }();
  return limit;
}

// ---------------------------------------------------------------------------
// Rational
// ---------------------------------------------------------------------------

namespace {

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return r;
}

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return r;
}

}  // namespace

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(checked_add(checked_mul(num, o.den), checked_mul(o.num, den)),
                  checked_mul(den, o.den));
}

Rational Rational::operator-(const Rational& o) const {
  return *this + Rational(-o.num, o.den);
}

Rational Rational::operator*(const Rational& o) const {
  return Rational(checked_mul(num, o.num), checked_mul(den, o.den));
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num == 0) throw std::invalid_argument("rational division by zero");
  return Rational(checked_mul(num, o.den), checked_mul(den, o.num));
}

bool Rational::operator<(const Rational& o) const {
  return checked_mul(num, o.den) < checked_mul(o.num, den);
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

// ---------------------------------------------------------------------------
// ConceptClass
// ---------------------------------------------------------------------------

ConceptClass::ConceptClass() = default;

ConceptClass::ConceptClass(int domain_size, std::vector<Word> hypotheses)
    : n_(domain_size), words_(std::move(hypotheses)) {
  if (n_ < 0) throw parse_error("domain_size must be non-negative");
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const Word& w = words_[i];
    if (static_cast<int>(w.size()) != n_) {
      throw parse_error("hypothesis " + std::to_string(i) + " has length " +
                        std::to_string(w.size()) + ", expected " + std::to_string(n_));
    }
    for (Label y : w) {
      if (y < 0) {
        throw parse_error("hypothesis " + std::to_string(i) + " has a negative label");
      }
    }
  }
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

bool ConceptClass::contains(const Word& w) const {
  return std::binary_search(words_.begin(), words_.end(), w);
}

int ConceptClass::index_of(const Word& w) const {
  auto it = std::lower_bound(words_.begin(), words_.end(), w);
  if (it == words_.end() || *it != w) return -1;
  return static_cast<int>(it - words_.begin());
}

std::vector<Label> ConceptClass::used_labels() const {
  std::set<Label> labels;
  for (const Word& w : words_) labels.insert(w.begin(), w.end());
  return {labels.begin(), labels.end()};
}

int ConceptClass::max_label() const {
  int m = -1;
  for (const Word& w : words_) {
    for (Label y : w) m = std::max(m, y);
  }
  return m;
}

ConceptClass ConceptClass::reinterned() const {
  std::vector<Label> labels = used_labels();
  std::map<Label, Label> remap;
  for (std::size_t i = 0; i < labels.size(); ++i) remap[labels[i]] = static_cast<Label>(i);
  std::vector<Word> out = words_;
  for (Word& w : out) {
    for (Label& y : w) y = remap.at(y);
  }
  return ConceptClass(n_, std::move(out));
}

ConceptClass project(const ConceptClass& cls, std::span<const int> coords) {
  for (int c : coords) {
    if (c < 0 || c >= cls.domain_size()) {
      throw precondition_error("projection index " + std::to_string(c) +
                               " out of range for domain of size " +
                               std::to_string(cls.domain_size()));
    }
  }
  std::vector<Word> out;
  out.reserve(cls.words().size());
  for (const Word& w : cls.words()) {
    Word proj(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) proj[i] = w[static_cast<std::size_t>(coords[i])];
    out.push_back(std::move(proj));
  }
  return ConceptClass(static_cast<int>(coords.size()), std::move(out));
}

// ---------------------------------------------------------------------------
// Menu
// ---------------------------------------------------------------------------

Menu::Menu(int size_bound) : p_(size_bound) {
  if (p_ <= 0) throw parse_error("menu size bound must be positive");
}

Menu::Menu(int size_bound, std::map<int, std::set<Label>> entries)
    : p_(size_bound), entries_(std::move(entries)) {
  if (p_ <= 0) throw parse_error("menu size bound must be positive");
  for (const auto& [x, labels] : entries_) {
    if (x < 0) throw parse_error("menu entry for negative point " + std::to_string(x));
    if (static_cast<int>(labels.size()) > p_) {
      throw parse_error("menu entry for point " + std::to_string(x) + " has " +
                        std::to_string(labels.size()) + " labels, bound is " +
                        std::to_string(p_));
    }
    for (Label y : labels) {
      if (y < 0) throw parse_error("menu entry for point " + std::to_string(x) + " has a negative label");
    }
  }
}

const std::set<Label>& Menu::at(int x) const {
  static const std::set<Label> kEmpty;
  auto it = entries_.find(x);
  return it == entries_.end() ? kEmpty : it->second;
}

void Menu::assign(int x, std::set<Label> labels) {
  if (static_cast<int>(labels.size()) > p_) {
    throw precondition_error("menu entry for point " + std::to_string(x) +
                             " would exceed size bound " + std::to_string(p_));
  }
  entries_[x] = std::move(labels);
}

// ---------------------------------------------------------------------------
// FiniteDistribution
// ---------------------------------------------------------------------------

FiniteDistribution::FiniteDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  long double total = 0.0L;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const Atom& a = atoms_[i];
    if (a.p < 0.0) {
      throw parse_error("atom " + std::to_string(i) + " has negative probability");
    }
    if (a.example.x < 0 || a.example.y < 0) {
      throw parse_error("atom " + std::to_string(i) + " has a negative point or label");
    }
    total += a.p;
  }
  if (std::abs(static_cast<double>(total) - 1.0) > 1e-12) {
    throw parse_error("atom probabilities sum to " + std::to_string(static_cast<double>(total)) +
                      ", expected 1 within 1e-12");
  }
}

FiniteDistribution FiniteDistribution::uniform(const Sample& examples) {
  if (examples.empty()) throw precondition_error("uniform distribution over an empty sample");
  std::vector<Atom> atoms;
  atoms.reserve(examples.size());
  double p = 1.0 / static_cast<double>(examples.size());
  for (const LabeledExample& e : examples) atoms.push_back({e, p});
  // Fix the last atom so the total is exactly 1 in floating point.
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) sum += atoms[i].p;
  atoms.back().p = 1.0 - sum;
  return FiniteDistribution(std::move(atoms));
}

// ---------------------------------------------------------------------------
// Realizability
// ---------------------------------------------------------------------------

void check_sample_in_range(const ConceptClass& cls, const Sample& s) {
  for (const LabeledExample& e : s) {
    if (e.x < 0 || e.x >= cls.domain_size()) {
      throw precondition_error("sample point " + std::to_string(e.x) +
                               " out of range for domain of size " +
                               std::to_string(cls.domain_size()));
    }
  }
}

bool is_realizable(const ConceptClass& cls, const Sample& s) {
  check_sample_in_range(cls, s);
  if (s.empty()) return !cls.empty();
  for (const Word& w : cls.words()) {
    bool ok = true;
    for (const LabeledExample& e : s) {
      if (w[static_cast<std::size_t>(e.x)] != e.y) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

bool is_menu_realizable(const Sample& s, const Menu& mu) {
  for (const LabeledExample& e : s) {
    if (e.x < 0) throw precondition_error("sample point " + std::to_string(e.x) + " out of range");
    if (!mu.at(e.x).contains(e.y)) return false;
  }
  return true;
}

bool distribution_is_realizable(const ConceptClass& cls, const FiniteDistribution& d) {
  Sample support;
  for (const Atom& a : d.atoms()) {
    if (a.p > 0.0) support.push_back(a.example);
  }
  if (support.empty()) return true;
  for (const LabeledExample& e : support) {
    if (e.x >= cls.domain_size()) return false;
  }
  return is_realizable(cls, support);
}

}  // namespace mclab
