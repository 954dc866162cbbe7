#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exactreach/lp.hpp"
#include "exactreach/rational.hpp"

namespace exactreach {

/**
 * Exact LU decomposition (with row permutation) of a basis submatrix,
 * supporting solves with B and with B^T. Pivot replacements are absorbed as
 * product-form eta updates; the factorization is rebuilt from scratch every
 * 64 updates to keep rational entry sizes bounded.
 *
 * Holds a pointer to the problem it was created from; the problem must
 * outlive the factorization.
 */
class BasisFactorization {
 public:
  /// Factorizes the basis columns. Empty when the submatrix is singular, which
  /// is the detection channel for non-apt scheduler bases.
  static std::optional<BasisFactorization> create(const LpProblem& problem, const Basis& basis);

  int size() const { return m_; }

  /// Basis columns in positional order (position k owns row k of the solves).
  const std::vector<int>& columns() const { return columns_; }

  /// Solves B y = rhs.
  std::vector<Rational> ftran(const std::vector<Rational>& rhs) const;

  /// Solves y^T B = rhs^T.
  std::vector<Rational> btran(const std::vector<Rational>& rhs) const;

  /**
   * Replaces the column at `position` by problem column `new_column`;
   * `ftran_of_new` must be ftran() of that column under the current
   * factorization. Returns false if the pivot element is zero (the
   * replacement would be singular).
   */
  bool replace_column(int position, int new_column, const std::vector<Rational>& ftran_of_new);

 private:
  explicit BasisFactorization(const LpProblem& problem) : problem_(&problem) {}
  bool refactor();

  static constexpr int kRefactorInterval = 64;

  const LpProblem* problem_;
  int m_ = 0;
  std::vector<int> columns_;
  std::vector<std::vector<Rational>> lu_;  // L strictly below the diagonal, U on and above
  std::vector<int> perm_;                  // working row k reads original row perm_[k]
  struct Eta {
    int position;
    std::vector<Rational> w;
  };
  std::vector<Eta> etas_;
};

/// Convenience name for BasisFactorization::create.
inline std::optional<BasisFactorization> factorize_basis(const LpProblem& problem,
                                                         const Basis& basis) {
  return BasisFactorization::create(problem, basis);
}

/// The basic solution induced by the factorized basis: non-basic components
/// zero, basic components solving B x^B = rhs. Satisfies matrix . x = rhs
/// exactly; it need not be feasible (components may be negative).
std::vector<Rational> basic_solution(const LpProblem& problem, const BasisFactorization& fact);

/// Reduced costs c_j - c^B B^-1 A_j, returned as a full-width vector with
/// zeros in the basic positions.
std::vector<Rational> reduced_costs(const LpProblem& problem, const BasisFactorization& fact);

enum class SimplexStatus { Optimal, SingularBasis, IterationLimit };

struct PivotRecord {
  long iteration;
  int entering_column;
  int leaving_column;
};

struct SimplexOutcome {
  SimplexStatus status = SimplexStatus::SingularBasis;
  std::vector<Rational> solution;  // size n + m, empty unless Optimal
  Rational objective;
  Basis basis;  // final basis (the start basis if it was singular)
  long pivots = 0;
  std::vector<PivotRecord> phase_log;
};

/// 10 * (n + m); generous for desk scale.
long default_iteration_limit(const LpProblem& problem);

/**
 * Two-phase primal simplex in exact rational arithmetic, warm-started from
 * `start`. Phase one is the composite method: it minimizes the sum of
 * infeasibilities with the negative basic variables treated as bound-shifted,
 * introducing no artificial columns. Bland's least-index rule governs both
 * entering and leaving choices throughout, so the method terminates.
 */
SimplexOutcome primal_simplex(const LpProblem& problem, const Basis& start, long iteration_limit);

/**
 * Dual simplex, warm-started from `start`. When the start basis is already
 * dual feasible the first phase is skipped entirely; otherwise dual
 * feasibility is first established by running primal pivots against a
 * temporary right-hand side that makes the start basis feasible. Phase two
 * restores feasibility while keeping all reduced costs non-negative, with
 * Bland's least-index rule on both sides.
 */
SimplexOutcome dual_simplex(const LpProblem& problem, const Basis& start, long iteration_limit);

/// Stable rendering of the pivot log, one line per pivot.
std::vector<std::string> pivot_log_lines(const LpProblem& problem, const SimplexOutcome& outcome);

}  // namespace exactreach
