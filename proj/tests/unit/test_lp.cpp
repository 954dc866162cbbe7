#include <doctest.h>

#include <random>
#include <sstream>

#include "exactreach/errors.hpp"
#include "exactreach/lp.hpp"
#include "exactreach/simplex.hpp"
#include "support/models.hpp"

using namespace exactreach;
using exactreach::testing::m2_goal;
using exactreach::testing::make_m2;
using exactreach::testing::make_m5;
using exactreach::testing::random_mdp;
using exactreach::testing::random_target;

TEST_CASE("the m2 max problem matches the hand construction") {
  Mdp m2 = make_m2();
  LpProblem p = build_lp(m2, maybe_states(m2, m2_goal(), Objective::Max));
  CHECK(p.state_columns == 1);
  CHECK(p.rows == 2);
  CHECK(p.row_transition == std::vector<int>{0, 1});
  // A column for s0: both transitions put no mass on s0, so only the
  // source adjustment -1 remains.
  CHECK(p.matrix[0][0] == Rational(-1));
  CHECK(p.matrix[1][0] == Rational(-1));
  // identity block
  CHECK(p.matrix[0][1] == Rational(1));
  CHECK(p.matrix[0][2] == Rational(0));
  CHECK(p.matrix[1][1] == Rational(0));
  CHECK(p.matrix[1][2] == Rational(1));
  CHECK(p.rhs == std::vector<Rational>{Rational(-1, 2), Rational(-1, 3)});
  CHECK(p.cost == std::vector<Rational>{Rational(1), Rational(0), Rational(0)});
  CHECK(p.column_identity[0].kind == ColumnIdentity::Kind::State);
  CHECK(p.column_identity[0].id == 0);
  CHECK(p.column_identity[2].kind == ColumnIdentity::Kind::Slack);
  CHECK(p.column_identity[2].id == 1);
}

TEST_CASE("the m2 min problem negates A and b but not I") {
  Mdp m2 = make_m2();
  LpProblem p = build_lp(m2, maybe_states(m2, m2_goal(), Objective::Min));
  CHECK(p.matrix[0] == std::vector<Rational>{Rational(1), Rational(1), Rational(0)});
  CHECK(p.matrix[1] == std::vector<Rational>{Rational(1), Rational(0), Rational(1)});
  CHECK(p.rhs == std::vector<Rational>{Rational(1, 2), Rational(1, 3)});
  CHECK(p.cost == std::vector<Rational>{Rational(-1), Rational(0), Rational(0)});
}

TEST_CASE("a certain one-step transition gives A = [[-1]], b = (-1)") {
  RawModel raw;
  raw.state_count = 2;
  raw.transitions.push_back({0, "-", {{1, Rational(1)}}});
  raw.transitions.push_back({1, "-", {{1, Rational(1)}}});
  Mdp mdp = validate_mdp(raw);
  LpProblem p = build_lp(mdp, maybe_states(mdp, make_state_set(2, {1}), Objective::Max));
  CHECK(p.rows == 1);
  CHECK(p.matrix[0][0] == Rational(-1));
  CHECK(p.rhs[0] == Rational(-1));
}

TEST_CASE("mass into zero states vanishes from the row") {
  // s0 -> {goal: 1/4, zero: 3/4}; the zero state contributes to neither A nor b
  RawModel raw;
  raw.state_count = 3;
  raw.transitions.push_back({0, "-", {{1, Rational(1, 4)}, {2, Rational(3, 4)}}});
  raw.transitions.push_back({1, "-", {{1, Rational(1)}}});
  raw.transitions.push_back({2, "-", {{2, Rational(1)}}});
  Mdp mdp = validate_mdp(raw);
  LpProblem p = build_lp(mdp, maybe_states(mdp, make_state_set(3, {1}), Objective::Max));
  CHECK(p.matrix[0][0] == Rational(-1));
  CHECK(p.rhs[0] == Rational(-1, 4));
}

TEST_CASE("an empty maybe set cannot be built") {
  Mdp m2 = make_m2();
  CHECK_THROWS_AS(build_lp(m2, maybe_states(m2, StateSet(3, false), Objective::Max)),
                  LpBuildError);
}

TEST_CASE("scheduler bases on m2") {
  Mdp m2 = make_m2();
  LpProblem p = build_lp(m2, maybe_states(m2, m2_goal(), Objective::Max));

  Scheduler mu_a(3);
  mu_a.set(0, 0);
  CHECK(basis_from_scheduler(p, mu_a).columns == std::vector<int>{0, 2});

  Scheduler mu_b(3);
  mu_b.set(0, 1);
  CHECK(basis_from_scheduler(p, mu_b).columns == std::vector<int>{0, 1});

  CHECK(default_basis(p).columns == std::vector<int>{1, 2});

  SUBCASE("missing and foreign choices are rejected") {
    Scheduler empty(3);
    CHECK_THROWS_AS(basis_from_scheduler(p, empty), LpBuildError);
    Scheduler foreign(3);
    foreign.set(0, 2);  // transition of state 1, not enabled at s0
    CHECK_THROWS_AS(basis_from_scheduler(p, foreign), LpBuildError);
  }
}

TEST_CASE("a chain's basis is exactly the state columns") {
  Mdp walk = exactreach::testing::make_biased_walk(6);
  MaybeAnalysis analysis = maybe_states(walk, exactreach::testing::walk_goal(6), Objective::Max);
  LpProblem p = build_lp(walk, analysis);
  CHECK(p.rows == p.state_columns);
  MarkovChain chain = MarkovChain::from_mdp(walk);
  Basis basis = basis_from_scheduler(p, chain.unique_scheduler());
  for (int j = 0; j < p.state_columns; ++j) CHECK(basis.columns[j] == j);
  CHECK(static_cast<int>(basis.columns.size()) == p.rows);
}

TEST_CASE("bookkeeping invariants on random problems") {
  std::mt19937 rng(59);
  for (int round = 0; round < 40; ++round) {
    Mdp mdp = random_mdp(rng);
    StateSet target = random_target(rng, mdp.state_count());
    for (Objective objective : {Objective::Max, Objective::Min}) {
      MaybeAnalysis analysis = maybe_states(mdp, target, objective);
      if (analysis.maybe_count() == 0) continue;
      LpProblem p = build_lp(mdp, analysis);

      CHECK(p.rows >= p.state_columns);
      for (int j = 0; j < p.state_columns; ++j) {
        CHECK(p.column_identity[j].id == analysis.maybe_states[j]);
      }
      for (int i = 1; i < p.rows; ++i) {
        CHECK(analysis.maybe_index[p.row_source[i - 1]] <= analysis.maybe_index[p.row_source[i]]);
      }
      // the slack block is exactly the identity
      for (int i = 0; i < p.rows; ++i) {
        for (int k = 0; k < p.rows; ++k) {
          CHECK(p.matrix[i][p.state_columns + k] == (i == k ? Rational(1) : Rational(0)));
        }
      }
      // every maybe state owns at least one row
      std::vector<int> rows_of(analysis.maybe_count(), 0);
      for (int i = 0; i < p.rows; ++i) ++rows_of[analysis.maybe_index[p.row_source[i]]];
      for (int count : rows_of) CHECK(count >= 1);
    }
  }
}

TEST_CASE("apt scheduler bases factorize, the m5 loop basis does not") {
  Mdp m5 = make_m5();
  MaybeAnalysis analysis = maybe_states(m5, m2_goal(), Objective::Max);
  LpProblem p = build_lp(m5, analysis);

  Scheduler loop(3);
  loop.set(0, 2);
  Basis loop_basis = basis_from_scheduler(p, loop);
  CHECK(loop_basis.columns == std::vector<int>{0, 1, 2});
  CHECK_FALSE(factorize_basis(p, loop_basis).has_value());

  std::mt19937 rng(61);
  for (int round = 0; round < 60; ++round) {
    Mdp mdp = random_mdp(rng);
    StateSet target = random_target(rng, mdp.state_count());
    MaybeAnalysis a = maybe_states(mdp, target, Objective::Max);
    if (a.maybe_count() == 0) continue;
    Scheduler eta = exactreach::testing::random_scheduler(rng, mdp, a);
    if (!is_apt(mdp, a, eta)) continue;
    LpProblem problem = build_lp(mdp, a);
    CHECK(factorize_basis(problem, basis_from_scheduler(problem, eta)).has_value());
  }
}

TEST_CASE("the LP text export mentions every column") {
  Mdp m2 = make_m2();
  LpProblem p = build_lp(m2, maybe_states(m2, m2_goal(), Objective::Max));
  std::ostringstream os;
  write_lp_text(p, os);
  std::string text = os.str();
  CHECK(text.find("x_s0") != std::string::npos);
  CHECK(text.find("w_t0") != std::string::npos);
  CHECK(text.find("w_t1") != std::string::npos);
  CHECK(text.find("1/2") != std::string::npos);
}
