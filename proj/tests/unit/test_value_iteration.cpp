#include <doctest.h>

#include <random>

#include "exactreach/errors.hpp"
#include "exactreach/value_iteration.hpp"
#include "support/models.hpp"

using namespace exactreach;
using exactreach::testing::m2_goal;
using exactreach::testing::make_m2;
using exactreach::testing::random_mdp;
using exactreach::testing::random_target;

TEST_CASE("value iteration on m2") {
  Mdp m2 = make_m2();
  SUBCASE("max converges to 0.5 in two sweeps") {
    MaybeAnalysis analysis = maybe_states(m2, m2_goal(), Objective::Max);
    ApproxResult result = value_iterate(m2, analysis);
    CHECK(result.values.size() == 1);
    CHECK(result.values[0] == 0.5);
    CHECK(result.scheduler.at(0) == 0);
    CHECK(result.iterations == 2);
  }
  SUBCASE("min picks mu_b") {
    MaybeAnalysis analysis = maybe_states(m2, m2_goal(), Objective::Min);
    ApproxResult result = value_iterate(m2, analysis);
    CHECK(result.values[0] == 1.0 / 3.0);
    CHECK(result.scheduler.at(0) == 1);
  }
}

TEST_CASE("an empty maybe set is vacuous") {
  Mdp m2 = make_m2();
  MaybeAnalysis analysis = maybe_states(m2, StateSet(3, false), Objective::Max);
  ApproxResult result = value_iterate(m2, analysis);
  CHECK(result.values.empty());
  CHECK(result.iterations == 0);
}

TEST_CASE("epsilon must be positive and the sweep cap is enforced") {
  Mdp m2 = make_m2();
  MaybeAnalysis analysis = maybe_states(m2, m2_goal(), Objective::Max);
  ValueIterationOptions options;
  options.epsilon = 0;
  CHECK_THROWS_AS(value_iterate(m2, analysis, options), std::invalid_argument);

  options.epsilon = 1e-9;
  options.max_sweeps = 1;
  CHECK_THROWS_AS(value_iterate(m2, analysis, options), ValueIterationError);
}

TEST_CASE("max iterates increase monotonically from zero") {
  std::mt19937 rng(47);
  for (int round = 0; round < 30; ++round) {
    Mdp mdp = random_mdp(rng);
    StateSet target = random_target(rng, mdp.state_count());
    MaybeAnalysis analysis = maybe_states(mdp, target, Objective::Max);
    if (analysis.maybe_count() == 0) continue;
    ValueIterationOptions options;
    options.record_history = true;
    ApproxResult result = value_iterate(mdp, analysis, options);
    for (std::size_t k = 1; k < result.history.size(); ++k) {
      for (int i = 0; i < analysis.maybe_count(); ++i) {
        CHECK(result.history[k][i] >= result.history[k - 1][i]);
      }
    }
    for (double v : result.values) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("the returned scheduler is greedy at the final iterate") {
  std::mt19937 rng(53);
  for (int round = 0; round < 30; ++round) {
    Mdp mdp = random_mdp(rng);
    StateSet target = random_target(rng, mdp.state_count());
    for (Objective objective : {Objective::Max, Objective::Min}) {
      MaybeAnalysis analysis = maybe_states(mdp, target, objective);
      if (analysis.maybe_count() == 0) continue;
      ApproxResult result = value_iterate(mdp, analysis);

      auto backup = [&](int t) {
        double q = 0;
        for (const auto& [dest, p] : mdp.transition(t).support) {
          if (analysis.target_states[dest]) {
            q += p.to_double();
          } else if (analysis.maybe_index[dest] >= 0) {
            q += p.to_double() * result.values[analysis.maybe_index[dest]];
          }
        }
        return q;
      };
      for (int s : analysis.maybe_states) {
        auto [first, last] = mdp.enabled_range(s);
        double best = backup(first);
        for (int t = first + 1; t < last; ++t) {
          double q = backup(t);
          best = objective == Objective::Max ? std::max(best, q) : std::min(best, q);
        }
        CHECK(backup(result.scheduler.at(s)) == best);
      }
    }
  }
}

// A coarse threshold can stop value iteration before the slow branch has paid
// off, leaving a suboptimal (but apt) greedy scheduler: s0 chooses between an
// immediate 3/10 shot and a detour whose value converges to 1 slowly.
TEST_CASE("a coarse epsilon yields a suboptimal scheduler") {
  RawModel raw;
  raw.state_count = 4;  // 0: choice, 1: slow loop, 2: goal, 3: sink
  raw.transitions.push_back({0, "direct", {{2, Rational(3, 10)}, {3, Rational(7, 10)}}});
  raw.transitions.push_back({0, "detour", {{1, Rational(1)}}});
  raw.transitions.push_back({1, "-", {{1, Rational(9, 10)}, {2, Rational(1, 10)}}});
  raw.transitions.push_back({2, "-", {{2, Rational(1)}}});
  raw.transitions.push_back({3, "-", {{3, Rational(1)}}});
  Mdp mdp = validate_mdp(raw);
  StateSet goal = make_state_set(4, {2});
  MaybeAnalysis analysis = maybe_states(mdp, goal, Objective::Max);

  ValueIterationOptions coarse;
  coarse.epsilon = 0.1;
  ApproxResult rough = value_iterate(mdp, analysis, coarse);
  CHECK(rough.scheduler.at(0) == 0);  // picks "direct", the wrong choice
  CHECK(is_apt(mdp, analysis, rough.scheduler));

  ApproxResult fine = value_iterate(mdp, analysis);
  CHECK(fine.scheduler.at(0) == 1);  // "detour" wins once values converge
}
