#pragma once
// Shifting: the per-direction push-down operator, round-robin fixed-point
// iteration, and the downward-closure predicate its fixed points satisfy.

#include <optional>
#include <span>
#include <vector>

#include "mclab/types.hpp"

namespace mclab {

// Replaces every direction-i edge of size s by the words carrying symbols
// {0,...,s-1} at coordinate i with the same off-coordinate pattern.  Labels
// are 0-based, so "pushed down" means an initial segment starting at 0.
// Preserves |H|.
ConceptClass shift_once(const ConceptClass& cls, int direction);

// True iff every coordinate-wise-smaller word of a member is a member.
bool is_downward_closed(const ConceptClass& cls);

struct ShiftStep {
  int direction = 0;
  bool changed = false;
  long long label_sum_before = 0;
  long long label_sum_after = 0;
  Rational avd_prime_before;
  Rational avd_prime_after;
  std::optional<int> exp_dim_before;  // filled only when stats are requested
  std::optional<int> exp_dim_after;
};

struct ShiftTrace {
  ConceptClass initial;  // after re-interning onto the used alphabet
  std::vector<ShiftStep> steps;
  ConceptClass final_class;
};

// Round-robin over directions until a full round changes nothing.  The class
// is re-interned onto its used alphabet first.  A non-empty `schedule` is
// cycled instead of 0..n-1.  When `with_dimension_stats` is set, each step
// also records the exponential dimension before/after (costly on purpose).
ShiftTrace shift_to_fixed_point(const ConceptClass& cls,
                                std::span<const int> schedule = {},
                                bool with_dimension_stats = false,
                                Budget* budget = nullptr);

}  // namespace mclab
