#include <doctest.h>

#include <random>

#include "exactreach/errors.hpp"
#include "exactreach/oracle.hpp"
#include "support/models.hpp"

using namespace exactreach;
using exactreach::testing::m2_goal;
using exactreach::testing::make_m2;
using exactreach::testing::make_m5;
using exactreach::testing::random_mdp;
using exactreach::testing::random_target;

namespace {

MarkovChain m2_chain(int choice) {
  Mdp m2 = make_m2();
  Scheduler eta(3);
  eta.set(0, choice);
  eta.set(1, 2);
  eta.set(2, 3);
  return induced_chain(m2, eta);
}

}  // namespace

TEST_CASE("chain evaluation on hand-solved chains") {
  SUBCASE("one step") {
    std::vector<Rational> v = chain_reach_exact(m2_chain(0), m2_goal());
    CHECK(v[0] == Rational(1, 2));
    CHECK(v[1] == Rational(1));
    CHECK(v[2] == Rational(0));
    CHECK(chain_reach_exact(m2_chain(1), m2_goal())[0] == Rational(1, 3));
  }
  SUBCASE("certain eventual reachability: v = v/2 + 1/2") {
    RawModel raw;
    raw.state_count = 2;
    raw.transitions.push_back({0, "-", {{0, Rational(1, 2)}, {1, Rational(1, 2)}}});
    raw.transitions.push_back({1, "-", {{1, Rational(1)}}});
    MarkovChain chain = MarkovChain::from_mdp(validate_mdp(raw));
    CHECK(chain_reach_exact(chain, make_state_set(2, {1}))[0] == Rational(1));
  }
  SUBCASE("loop with escape: v = 1/3 + v/3") {
    RawModel raw;
    raw.state_count = 3;
    raw.transitions.push_back(
        {0, "-", {{0, Rational(1, 3)}, {1, Rational(1, 3)}, {2, Rational(1, 3)}}});
    raw.transitions.push_back({1, "-", {{1, Rational(1)}}});
    raw.transitions.push_back({2, "-", {{2, Rational(1)}}});
    MarkovChain chain = MarkovChain::from_mdp(validate_mdp(raw));
    CHECK(chain_reach_exact(chain, make_state_set(3, {1}))[0] == Rational(1, 2));
  }
}

TEST_CASE("brute force on m2") {
  Mdp m2 = make_m2();
  OracleResult max_opt = brute_force_optimal(m2, m2_goal(), Objective::Max);
  CHECK(max_opt.values[0] == Rational(1, 2));
  CHECK(max_opt.values[1] == Rational(1));
  CHECK(max_opt.values[2] == Rational(0));
  CHECK(max_opt.argopt.at(0) == 0);
  CHECK(max_opt.schedulers_examined == 2);

  OracleResult min_opt = brute_force_optimal(m2, m2_goal(), Objective::Min);
  CHECK(min_opt.values[0] == Rational(1, 3));
  CHECK(min_opt.argopt.at(0) == 1);
}

TEST_CASE("brute force on a chain is the chain evaluation") {
  MarkovChain chain = m2_chain(1);
  OracleResult opt = brute_force_optimal(chain.mdp(), m2_goal(), Objective::Max);
  CHECK(opt.values == chain_reach_exact(chain, m2_goal()));
  CHECK(opt.schedulers_examined == 1);
}

TEST_CASE("the scheduler guard rejects huge enumeration spaces") {
  RawModel raw;
  const int n = 21;
  raw.state_count = n;
  for (int s = 0; s < n - 1; ++s) {
    raw.transitions.push_back({s, "a", {{s + 1, Rational(1)}}});
    raw.transitions.push_back({s, "b", {{s, Rational(1, 2)}, {s + 1, Rational(1, 2)}}});
  }
  raw.transitions.push_back({n - 1, "-", {{n - 1, Rational(1)}}});
  Mdp mdp = validate_mdp(raw);
  CHECK_THROWS_AS(brute_force_optimal(mdp, make_state_set(n, {n - 1}), Objective::Max),
                  OracleError);
}

TEST_CASE("policy iteration on m2") {
  Mdp m2 = make_m2();
  SUBCASE("max from the suboptimal choice") {
    MaybeAnalysis analysis = maybe_states(m2, m2_goal(), Objective::Max);
    Scheduler start(3);
    start.set(0, 1);  // mu_b
    OracleResult result = exact_policy_iteration(m2, analysis, start);
    CHECK(result.values[0] == Rational(1, 2));
    CHECK(result.argopt.at(0) == 0);
    CHECK(result.schedulers_examined == 2);  // evaluate mu_b, improve, evaluate mu_a
  }
  SUBCASE("min from the suboptimal choice") {
    MaybeAnalysis analysis = maybe_states(m2, m2_goal(), Objective::Min);
    Scheduler start(3);
    start.set(0, 0);  // mu_a
    OracleResult result = exact_policy_iteration(m2, analysis, start);
    CHECK(result.values[0] == Rational(1, 3));
    CHECK(result.argopt.at(0) == 1);
  }
  SUBCASE("an optimal start is a fixpoint") {
    MaybeAnalysis analysis = maybe_states(m2, m2_goal(), Objective::Max);
    Scheduler start(3);
    start.set(0, 0);
    OracleResult result = exact_policy_iteration(m2, analysis, start);
    CHECK(result.schedulers_examined == 1);
    CHECK(result.values[0] == Rational(1, 2));
  }
}

TEST_CASE("policy iteration rejects non-apt starts for max") {
  Mdp m5 = make_m5();
  MaybeAnalysis analysis = maybe_states(m5, m2_goal(), Objective::Max);
  Scheduler loop(3);
  loop.set(0, 2);
  CHECK_THROWS_AS(exact_policy_iteration(m5, analysis, loop), OracleError);
}

TEST_CASE("policy iteration agrees with brute force on random models") {
  std::mt19937 rng(41);
  exactreach::testing::RandomModelParams params;
  params.max_states = 6;
  int done = 0;
  while (done < 40) {
    Mdp mdp = random_mdp(rng, params);
    StateSet target = random_target(rng, mdp.state_count());
    for (Objective objective : {Objective::Max, Objective::Min}) {
      MaybeAnalysis analysis = maybe_states(mdp, target, objective);
      if (analysis.maybe_count() == 0) continue;

      // find an apt random start (anything works for min)
      Scheduler start;
      bool found = false;
      for (int tries = 0; tries < 32 && !found; ++tries) {
        start = exactreach::testing::random_scheduler(rng, mdp, analysis);
        found = is_apt(mdp, analysis, start);
      }
      if (!found) continue;

      OracleResult pi = exact_policy_iteration(mdp, analysis, start);
      OracleResult brute = brute_force_optimal(mdp, target, objective);
      for (int s : analysis.maybe_states) CHECK(pi.values[s] == brute.values[s]);
      ++done;
    }
  }
}

TEST_CASE("brute force dominates every single scheduler") {
  std::mt19937 rng(43);
  exactreach::testing::RandomModelParams params;
  params.max_states = 5;
  for (int round = 0; round < 20; ++round) {
    Mdp mdp = random_mdp(rng, params);
    StateSet target = random_target(rng, mdp.state_count());
    OracleResult max_opt = brute_force_optimal(mdp, target, Objective::Max);
    OracleResult min_opt = brute_force_optimal(mdp, target, Objective::Min);
    for (int k = 0; k < 5; ++k) {
      Scheduler eta(mdp.state_count());
      for (int s = 0; s < mdp.state_count(); ++s) {
        auto [first, last] = mdp.enabled_range(s);
        eta.set(s, std::uniform_int_distribution<int>(first, last - 1)(rng));
      }
      std::vector<Rational> v = chain_reach_exact(induced_chain(mdp, eta), target);
      for (int s = 0; s < mdp.state_count(); ++s) {
        CHECK(v[s] <= max_opt.values[s]);
        CHECK(v[s] >= min_opt.values[s]);
      }
    }
  }
}
