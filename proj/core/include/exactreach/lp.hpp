#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "exactreach/mdp.hpp"
#include "exactreach/qualitative.hpp"

namespace exactreach {

/// What a column of the constraint matrix stands for: the value variable of a
/// maybe state, or the slack variable of one transition row.
struct ColumnIdentity {
  enum class Kind { State, Slack };
  Kind kind = Kind::State;
  int id = 0;  // state id for State, transition id for Slack

  bool operator==(const ColumnIdentity&) const = default;
};

/**
 * The reachability LP in canonical equality form:
 *
 *   minimize cost . x   subject to   matrix . x = rhs,  x >= 0
 *
 * with one row per transition of a maybe state and columns split into
 * `state_columns` value variables followed by `rows` slack variables. The
 * slack block is exactly the identity. For the Max objective the stored
 * matrix is (A | I) with A_{i,j} = mu_i(s_j) - [s_j = source(mu_i)] and
 * rhs_i = -sum of mu_i's mass into the target; for Min the stored matrix is
 * (-A | I) with the rhs negated and the costs flipped to -1 on state columns.
 * Probability mass into zero states appears nowhere. Rows are grouped by
 * source state in ascending maybe order.
 */
struct LpProblem {
  Objective objective = Objective::Max;
  int rows = 0;           // m
  int state_columns = 0;  // n
  std::vector<std::vector<Rational>> matrix;  // rows x (n + m)
  std::vector<Rational> rhs;                  // size m
  std::vector<Rational> cost;                 // size n + m
  std::vector<ColumnIdentity> column_identity;
  std::vector<int> row_transition;  // row -> canonical transition id
  std::vector<int> row_source;      // row -> source state id

  int columns() const { return state_columns + rows; }
};

/// A basis: exactly `rows` column indices whose submatrix is meant to be
/// non-singular (checked by factorization, not here). Kept sorted.
struct Basis {
  std::vector<int> columns;
  bool operator==(const Basis&) const = default;
};

/// Builds the canonical LP. Throws LpBuildError{EmptyMaybeSet} when there is
/// nothing to solve (callers short-circuit: every value is 0 or 1).
LpProblem build_lp(const Mdp& mdp, const MaybeAnalysis& analysis);

/// The warm-start basis of a scheduler: all state columns plus the slack
/// columns of every transition the scheduler does not choose. Throws
/// LpBuildError{SchedulerDomainMismatch} if the scheduler misses a maybe state
/// or picks a transition that is not enabled there.
Basis basis_from_scheduler(const LpProblem& problem, const Scheduler& eta);

/// The all-slack basis (the identity block); trivially non-singular.
Basis default_basis(const LpProblem& problem);

/// Stable human-readable name of a column ("x_s3" / "w_t7"), used by the
/// pivot log and the LP text export.
std::string column_name(const LpProblem& problem, int column);

/// Debug export in LP text format with exact "p/q" coefficients.
void write_lp_text(const LpProblem& problem, std::ostream& os);

}  // namespace exactreach
