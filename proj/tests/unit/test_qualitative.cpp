#include <doctest.h>

#include <random>

#include "exactreach/oracle.hpp"
#include "exactreach/qualitative.hpp"
#include "support/models.hpp"

using namespace exactreach;
using exactreach::testing::m2_goal;
using exactreach::testing::make_m2;
using exactreach::testing::make_m5;
using exactreach::testing::random_mdp;
using exactreach::testing::random_target;

TEST_CASE("prob0 on m2") {
  Mdp m2 = make_m2();
  CHECK(set_to_ids(prob0_max(m2, m2_goal())) == std::vector<int>{2});
  CHECK(set_to_ids(prob0_min(m2, m2_goal())) == std::vector<int>{2});

  StateSet all(3, true);
  CHECK(set_to_ids(prob0_max(m2, all)).empty());
  CHECK(set_to_ids(prob0_min(m2, all)).empty());
}

TEST_CASE("prob0_max on a forward chain with a backward target") {
  RawModel raw;
  raw.state_count = 3;
  raw.transitions.push_back({0, "-", {{1, Rational(1)}}});
  raw.transitions.push_back({1, "-", {{2, Rational(1)}}});
  raw.transitions.push_back({2, "-", {{2, Rational(1)}}});
  Mdp mdp = validate_mdp(raw);
  CHECK(set_to_ids(prob0_max(mdp, make_state_set(3, {0}))) == std::vector<int>{1, 2});
}

TEST_CASE("a guaranteed self-loop makes the min probability zero") {
  RawModel raw;
  raw.state_count = 2;
  raw.transitions.push_back({0, "stay", {{0, Rational(1)}}});
  raw.transitions.push_back({0, "go", {{1, Rational(1)}}});
  raw.transitions.push_back({1, "-", {{1, Rational(1)}}});
  Mdp mdp = validate_mdp(raw);
  StateSet zero = prob0_min(mdp, make_state_set(2, {1}));
  CHECK(zero[0]);
  CHECK_FALSE(zero[1]);
}

TEST_CASE("maybe analysis of m2") {
  Mdp m2 = make_m2();
  for (Objective objective : {Objective::Max, Objective::Min}) {
    MaybeAnalysis analysis = maybe_states(m2, m2_goal(), objective);
    CHECK(analysis.maybe_states == std::vector<int>{0});
    CHECK(set_to_ids(analysis.zero_states) == std::vector<int>{2});
    CHECK(analysis.maybe_index[0] == 0);
    CHECK(analysis.maybe_index[1] == -1);
  }

  MaybeAnalysis empty_target = maybe_states(m2, StateSet(3, false), Objective::Max);
  CHECK(empty_target.maybe_states.empty());
  CHECK(set_to_ids(empty_target.zero_states) == std::vector<int>{0, 1, 2});
}

TEST_CASE("aptness on m2 and m5") {
  Mdp m2 = make_m2();
  MaybeAnalysis analysis = maybe_states(m2, m2_goal(), Objective::Max);
  Scheduler eta(3);
  eta.set(0, 0);
  CHECK(is_apt(m2, analysis, eta));

  Mdp m5 = make_m5();
  MaybeAnalysis m5_analysis = maybe_states(m5, m2_goal(), Objective::Max);
  Scheduler loop(3);
  loop.set(0, 2);  // the self-loop choice never reaches the goal
  CHECK_FALSE(is_apt(m5, m5_analysis, loop));

  // every scheduler is apt for the min objective
  MaybeAnalysis min_analysis = maybe_states(m5, m2_goal(), Objective::Min);
  CHECK(is_apt(m5, min_analysis, loop));
}

TEST_CASE("partition property on random models") {
  std::mt19937 rng(23);
  for (int round = 0; round < 60; ++round) {
    Mdp mdp = random_mdp(rng);
    StateSet target = random_target(rng, mdp.state_count());
    for (Objective objective : {Objective::Max, Objective::Min}) {
      MaybeAnalysis analysis = maybe_states(mdp, target, objective);
      for (int s = 0; s < mdp.state_count(); ++s) {
        int in_sets = (analysis.target_states[s] ? 1 : 0) + (analysis.zero_states[s] ? 1 : 0) +
                      (analysis.is_maybe(s) ? 1 : 0);
        CHECK(in_sets == 1);
      }
      for (std::size_t i = 1; i < analysis.maybe_states.size(); ++i) {
        CHECK(analysis.maybe_states[i - 1] < analysis.maybe_states[i]);
      }
    }
  }
}

TEST_CASE("zero sets agree with the brute-force oracle") {
  std::mt19937 rng(29);
  exactreach::testing::RandomModelParams params;
  params.max_states = 6;
  for (int round = 0; round < 40; ++round) {
    Mdp mdp = random_mdp(rng, params);
    StateSet target = random_target(rng, mdp.state_count());
    StateSet sup0 = prob0_max(mdp, target);
    StateSet inf0 = prob0_min(mdp, target);
    OracleResult max_opt = brute_force_optimal(mdp, target, Objective::Max);
    OracleResult min_opt = brute_force_optimal(mdp, target, Objective::Min);
    for (int s = 0; s < mdp.state_count(); ++s) {
      CHECK(sup0[s] == max_opt.values[s].is_zero());
      CHECK(inf0[s] == min_opt.values[s].is_zero());
    }
  }
}

TEST_CASE("prob0 is monotone in the target set") {
  std::mt19937 rng(31);
  for (int round = 0; round < 40; ++round) {
    Mdp mdp = random_mdp(rng);
    StateSet small = random_target(rng, mdp.state_count());
    StateSet large = small;
    // enlarge by a few random states
    std::uniform_int_distribution<int> pick(0, mdp.state_count() - 1);
    for (int k = 0; k < 2; ++k) large[pick(rng)] = true;

    StateSet zero_small = prob0_max(mdp, small);
    StateSet zero_large = prob0_max(mdp, large);
    StateSet inf_small = prob0_min(mdp, small);
    StateSet inf_large = prob0_min(mdp, large);
    for (int s = 0; s < mdp.state_count(); ++s) {
      if (zero_large[s]) CHECK(zero_small[s]);
      if (inf_large[s]) CHECK(inf_small[s]);
    }
  }
}

TEST_CASE("the oracle-optimal max scheduler is apt") {
  std::mt19937 rng(37);
  exactreach::testing::RandomModelParams params;
  params.max_states = 6;
  for (int round = 0; round < 30; ++round) {
    Mdp mdp = random_mdp(rng, params);
    StateSet target = random_target(rng, mdp.state_count());
    MaybeAnalysis analysis = maybe_states(mdp, target, Objective::Max);
    if (analysis.maybe_count() == 0) continue;
    OracleResult opt = brute_force_optimal(mdp, target, Objective::Max);
    CHECK(is_apt(mdp, analysis, opt.argopt));
  }
}
