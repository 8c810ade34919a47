#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mclab/dims.hpp"
#include "mclab/generators.hpp"
#include "mclab/oig.hpp"
#include "mclab/shift.hpp"
#include "support/oracles.hpp"

using namespace mclab;

namespace {

const ConceptClass kExample32(2, {{1, 1}, {1, 0}, {0, 1}, {2, 0}, {0, 2}});
const ConceptClass kExample33(2, {{2, 2}, {1, 1}, {1, 0}, {2, 0}});

// All strictly increasing index sequences of a domain.
std::vector<std::vector<int>> all_subsets(int n) {
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

}  // namespace

TEST_CASE("shift displays") {
  CHECK(shift_once(kExample32, 0) == ConceptClass(2, {{1, 1}, {0, 0}, {0, 1}, {1, 0}, {0, 2}}));
  CHECK(shift_once(kExample33, 0) == ConceptClass(2, {{0, 2}, {0, 1}, {0, 0}, {1, 0}}));

  // Downward-closed classes are fixed points.
  ConceptClass closed(2, {{0, 0}, {0, 1}, {1, 0}});
  CHECK(shift_once(closed, 0) == closed);
  CHECK(shift_once(closed, 1) == closed);

  CHECK_THROWS_AS(shift_once(closed, 2), precondition_error);
}

TEST_CASE("downward closure predicate") {
  CHECK(is_downward_closed(ConceptClass(2, {{0, 0}, {0, 1}, {1, 0}})));
  CHECK_FALSE(is_downward_closed(ConceptClass(2, {{1, 1}})));
  CHECK(is_downward_closed(gen_boolean_cube(3)));
}

TEST_CASE("fixed point iteration") {
  SUBCASE("the dimensions-increase example settles on a 5-word down-set") {
    ShiftTrace trace = shift_to_fixed_point(kExample32);
    CHECK(trace.final_class ==
          ConceptClass(2, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}}));
    CHECK(is_downward_closed(trace.final_class));
  }
  SUBCASE("boolean cube is already a fixed point") {
    ShiftTrace trace = shift_to_fixed_point(gen_boolean_cube(3));
    CHECK(trace.final_class == gen_boolean_cube(3));
    for (const ShiftStep& step : trace.steps) CHECK_FALSE(step.changed);
  }
  SUBCASE("hexagon reaches a 6-word down-set") {
    ShiftTrace trace = shift_to_fixed_point(gen_hexagon());
    CHECK(trace.final_class.size() == 6);
    CHECK(is_downward_closed(trace.final_class));
  }
  SUBCASE("an explicit schedule is honored") {
    std::vector<int> schedule{1, 0};
    ShiftTrace trace = shift_to_fixed_point(kExample32, schedule);
    CHECK(is_downward_closed(trace.final_class));
    CHECK(trace.steps[0].direction == 1);
  }
}

TEST_CASE("per-step invariants on random classes") {
  std::mt19937_64 rng(97);
  for (int round = 0; round < 80; ++round) {
    ConceptClass current = testing::random_class(rng, 4, 5, 20).reinterned();
    auto subsets = all_subsets(current.domain_size());
    for (int sweep = 0; sweep < 6; ++sweep) {
      bool changed = false;
      for (int dir = 0; dir < current.domain_size(); ++dir) {
        ConceptClass next = shift_once(current, dir);

        CHECK(next.size() == current.size());
        for (const auto& coords : subsets) {
          CHECK(project(next, coords).size() <= project(current, coords).size());
        }
        CHECK(exponential_dimension(next).value <= exponential_dimension(current).value);
        OneInclusionGraph ga(current), gb(next);
        CHECK(shifting_avg_degree(ga) <= shifting_avg_degree(gb));

        if (!(next == current)) changed = true;
        current = std::move(next);
      }
      if (!changed) break;
    }
    CHECK(is_downward_closed(current));
  }
}

TEST_CASE("downward-closed classes have avd at most twice the exp dimension") {
  std::mt19937_64 rng(101);
  for (int round = 0; round < 40; ++round) {
    ConceptClass cls = shift_to_fixed_point(testing::random_class(rng, 4, 4, 20)).final_class;
    REQUIRE(is_downward_closed(cls));
    OneInclusionGraph g(cls);
    int de = exponential_dimension(cls).value;
    CHECK(avg_degree(g) <= Rational(2) * Rational(de));
  }
}

TEST_CASE("trace records monotone statistics") {
  ShiftTrace trace = shift_to_fixed_point(gen_hexagon(), {}, true);
  for (const ShiftStep& step : trace.steps) {
    CHECK(step.avd_prime_before <= step.avd_prime_after);
    REQUIRE(step.exp_dim_before.has_value());
    REQUIRE(step.exp_dim_after.has_value());
    CHECK(*step.exp_dim_after <= *step.exp_dim_before);
    if (step.changed) CHECK(step.label_sum_after < step.label_sum_before);
  }
}
