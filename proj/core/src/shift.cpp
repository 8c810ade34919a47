#include "mclab/shift.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "mclab/dims.hpp"
#include "mclab/oig.hpp"

namespace mclab {

ConceptClass shift_once(const ConceptClass& cls, int direction) {
  if (direction < 0 || direction >= cls.domain_size()) {
    throw precondition_error("shift direction " + std::to_string(direction) +
                             " out of range for domain of size " +
                             std::to_string(cls.domain_size()));
  }
  // Edges in the shift direction: group by off-coordinate pattern.
  std::map<Word, int> edge_size;
  for (const Word& w : cls.words()) {
    Word off = w;
    off.erase(off.begin() + direction);
    ++edge_size[std::move(off)];
  }
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(cls.size()));
  for (auto& [off, size] : edge_size) {
    Word w = off;
    w.insert(w.begin() + direction, 0);
    for (Label y = 0; y < size; ++y) {
      w[static_cast<std::size_t>(direction)] = y;
      out.push_back(w);
    }
  }
  return ConceptClass(cls.domain_size(), std::move(out));
}

bool is_downward_closed(const ConceptClass& cls) {
  // The order on words is a product of chains, so closure under
  // single-coordinate decrements is equivalent to full downward closure.
  for (const Word& w : cls.words()) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] == 0) continue;
      Word below = w;
      --below[i];
      if (!cls.contains(below)) return false;
    }
  }
  return true;
}

namespace {

long long label_sum(const ConceptClass& cls) {
  long long sum = 0;
  for (const Word& w : cls.words()) {
    for (Label y : w) sum += y;
  }
  return sum;
}

}  // namespace

ShiftTrace shift_to_fixed_point(const ConceptClass& cls, std::span<const int> schedule,
                                bool with_dimension_stats, Budget* budget) {
  ShiftTrace trace;
  trace.initial = cls.reinterned();

  std::vector<int> cycle(schedule.begin(), schedule.end());
  if (cycle.empty()) {
    cycle.resize(static_cast<std::size_t>(cls.domain_size()));
    std::iota(cycle.begin(), cycle.end(), 0);
  }

  ConceptClass current = trace.initial;
  bool changed_in_round = !current.empty() && current.domain_size() > 0;
  while (changed_in_round && !cycle.empty()) {
    changed_in_round = false;
    for (int dir : cycle) {
      ShiftStep step;
      step.direction = dir;
      step.label_sum_before = label_sum(current);
      OneInclusionGraph g_before(current);
      step.avd_prime_before = shifting_avg_degree(g_before);
      if (with_dimension_stats) step.exp_dim_before = exponential_dimension(current, budget).value;

      ConceptClass next = shift_once(current, dir);
      step.changed = !(next == current);
      step.label_sum_after = label_sum(next);
      OneInclusionGraph g_after(next);
      step.avd_prime_after = shifting_avg_degree(g_after);
      if (with_dimension_stats) step.exp_dim_after = exponential_dimension(next, budget).value;

      trace.steps.push_back(std::move(step));
      if (trace.steps.back().changed) {
        changed_in_round = true;
        current = std::move(next);
      }
    }
  }
  trace.final_class = std::move(current);
  return trace;
}

}  // namespace mclab
