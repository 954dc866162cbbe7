#include "exactreach/simplex.hpp"

#include <algorithm>
#include <stdexcept>

namespace exactreach {

namespace {

std::vector<Rational> problem_column(const LpProblem& p, int j) {
  std::vector<Rational> col(p.rows);
  for (int i = 0; i < p.rows; ++i) col[i] = p.matrix[i][j];
  return col;
}

}  // namespace

std::optional<BasisFactorization> BasisFactorization::create(const LpProblem& problem,
                                                             const Basis& basis) {
  if (static_cast<int>(basis.columns.size()) != problem.rows) {
    throw std::invalid_argument("basis must have exactly one column per row");
  }
  BasisFactorization fact(problem);
  fact.m_ = problem.rows;
  fact.columns_ = basis.columns;
  if (!fact.refactor()) return std::nullopt;
  return fact;
}

bool BasisFactorization::refactor() {
  const int m = m_;
  lu_.assign(m, std::vector<Rational>(m, Rational(0)));
  perm_.resize(m);
  for (int i = 0; i < m; ++i) perm_[i] = i;
  etas_.clear();

  for (int k = 0; k < m; ++k) {
    const std::vector<Rational> col = problem_column(*problem_, columns_[k]);
    for (int i = 0; i < m; ++i) lu_[i][k] = col[i];
  }

  for (int k = 0; k < m; ++k) {
    // Partial pivoting by the largest absolute entry keeps rational entry
    // growth in check; exactness does not depend on the choice.
    int pivot = -1;
    Rational best(0);
    for (int i = k; i < m; ++i) {
      if (lu_[i][k].is_zero()) continue;
      Rational mag = abs(lu_[i][k]);
      if (pivot < 0 || mag > best) {
        pivot = i;
        best = mag;
      }
    }
    if (pivot < 0) return false;  // singular
    std::swap(lu_[k], lu_[pivot]);
    std::swap(perm_[k], perm_[pivot]);
    for (int i = k + 1; i < m; ++i) {
      if (lu_[i][k].is_zero()) continue;
      Rational f = lu_[i][k] / lu_[k][k];
      lu_[i][k] = f;  // store the L factor in place
      for (int j = k + 1; j < m; ++j) {
        if (!lu_[k][j].is_zero()) lu_[i][j] -= f * lu_[k][j];
      }
    }
  }
  return true;
}

std::vector<Rational> BasisFactorization::ftran(const std::vector<Rational>& rhs) const {
  const int m = m_;
  std::vector<Rational> y(m);
  for (int k = 0; k < m; ++k) y[k] = rhs[perm_[k]];
  // L z = Pv (unit lower triangular)
  for (int j = 0; j < m; ++j) {
    if (y[j].is_zero()) continue;
    for (int i = j + 1; i < m; ++i) {
      if (!lu_[i][j].is_zero()) y[i] -= lu_[i][j] * y[j];
    }
  }
  // U x = z
  for (int j = m - 1; j >= 0; --j) {
    if (!y[j].is_zero()) y[j] /= lu_[j][j];
    if (y[j].is_zero()) continue;
    for (int i = 0; i < j; ++i) {
      if (!lu_[i][j].is_zero()) y[i] -= lu_[i][j] * y[j];
    }
  }
  // product-form updates, oldest first
  for (const Eta& eta : etas_) {
    const int r = eta.position;
    if (!y[r].is_zero()) {
      y[r] /= eta.w[r];
      for (int i = 0; i < m; ++i) {
        if (i != r && !eta.w[i].is_zero()) y[i] -= eta.w[i] * y[r];
      }
    }
  }
  return y;
}

std::vector<Rational> BasisFactorization::btran(const std::vector<Rational>& rhs) const {
  const int m = m_;
  std::vector<Rational> y = rhs;
  // eta transposes, newest first: only the pivot position changes
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    const int r = it->position;
    Rational acc = y[r];
    for (int i = 0; i < m; ++i) {
      if (i != r && !it->w[i].is_zero()) acc -= it->w[i] * y[i];
    }
    y[r] = acc / it->w[r];
  }
  // B0^T z = y with B0^T = U^T L^T P: first U^T (lower triangular), then L^T.
  for (int j = 0; j < m; ++j) {
    if (!y[j].is_zero()) y[j] /= lu_[j][j];
    if (y[j].is_zero()) continue;
    for (int i = j + 1; i < m; ++i) {
      if (!lu_[j][i].is_zero()) y[i] -= lu_[j][i] * y[j];
    }
  }
  for (int j = m - 1; j >= 0; --j) {
    if (y[j].is_zero()) continue;
    for (int i = 0; i < j; ++i) {
      if (!lu_[j][i].is_zero()) y[i] -= lu_[j][i] * y[j];
    }
  }
  // undo the permutation: z[perm[k]] = d[k]
  std::vector<Rational> z(m);
  for (int k = 0; k < m; ++k) z[perm_[k]] = y[k];
  return z;
}

bool BasisFactorization::replace_column(int position, int new_column,
                                        const std::vector<Rational>& ftran_of_new) {
  if (ftran_of_new[position].is_zero()) return false;
  columns_[position] = new_column;
  etas_.push_back({position, ftran_of_new});
  if (static_cast<int>(etas_.size()) >= kRefactorInterval) {
    if (!refactor()) {
      throw std::logic_error("refactorization of a pivoted basis reported singularity");
    }
  }
  return true;
}

std::vector<Rational> basic_solution(const LpProblem& problem, const BasisFactorization& fact) {
  std::vector<Rational> x(problem.columns(), Rational(0));
  std::vector<Rational> beta = fact.ftran(problem.rhs);
  for (int k = 0; k < fact.size(); ++k) x[fact.columns()[k]] = beta[k];
  return x;
}

std::vector<Rational> reduced_costs(const LpProblem& problem, const BasisFactorization& fact) {
  const int m = problem.rows;
  std::vector<Rational> cb(m);
  std::vector<bool> in_basis(problem.columns(), false);
  for (int k = 0; k < m; ++k) {
    cb[k] = problem.cost[fact.columns()[k]];
    in_basis[fact.columns()[k]] = true;
  }
  std::vector<Rational> y = fact.btran(cb);
  std::vector<Rational> reduced(problem.columns(), Rational(0));
  for (int j = 0; j < problem.columns(); ++j) {
    if (in_basis[j]) continue;
    Rational dot(0);
    for (int i = 0; i < m; ++i) {
      if (!problem.matrix[i][j].is_zero()) dot += y[i] * problem.matrix[i][j];
    }
    reduced[j] = problem.cost[j] - dot;
  }
  return reduced;
}

long default_iteration_limit(const LpProblem& problem) {
  return 10L * problem.columns();
}

namespace {

// Shared machinery of the two simplex variants. One engine instance per
// solve; problems are shared immutable state.
class Engine {
 public:
  Engine(const LpProblem& p, long limit) : p_(p), limit_(limit) {}

  SimplexOutcome run_primal(const Basis& start) {
    SimplexOutcome out;
    if (!init(start, out)) return out;
    if (!primal_phase_one(out)) return out;
    if (!primal_phase_two(p_.rhs, out)) return out;
    finish(out);
    return out;
  }

  SimplexOutcome run_dual(const Basis& start) {
    SimplexOutcome out;
    if (!init(start, out)) return out;
    if (!dual_phase_one(out)) return out;
    if (!dual_phase_two(out)) return out;
    finish(out);
    return out;
  }

 private:
  bool init(const Basis& start, SimplexOutcome& out) {
    auto fact = BasisFactorization::create(p_, start);
    if (!fact) {
      out.status = SimplexStatus::SingularBasis;
      out.basis = start;
      return false;
    }
    fact_.emplace(std::move(*fact));
    in_basis_.assign(p_.columns(), false);
    for (int c : fact_->columns()) in_basis_[c] = true;
    return true;
  }

  const std::vector<int>& basic() const { return fact_->columns(); }

  std::vector<Rational> beta(const std::vector<Rational>& rhs) const { return fact_->ftran(rhs); }

  std::vector<Rational> current_reduced_costs() const {
    std::vector<Rational> cb(p_.rows);
    for (int k = 0; k < p_.rows; ++k) cb[k] = p_.cost[basic()[k]];
    std::vector<Rational> y = fact_->btran(cb);
    return costs_minus_price(y, p_.cost);
  }

  // c_j - y . A_j for every non-basic column, zero elsewhere.
  std::vector<Rational> costs_minus_price(const std::vector<Rational>& y,
                                          const std::vector<Rational>& costs) const {
    std::vector<Rational> d(p_.columns(), Rational(0));
    for (int j = 0; j < p_.columns(); ++j) {
      if (in_basis_[j]) continue;
      Rational dot(0);
      for (int i = 0; i < p_.rows; ++i) {
        if (!p_.matrix[i][j].is_zero()) dot += y[i] * p_.matrix[i][j];
      }
      d[j] = costs[j] - dot;
    }
    return d;
  }

  // Occasional exact residual check: the factorization must reproduce rhs.
  void check_residual(const std::vector<Rational>& rhs, const std::vector<Rational>& b) const {
    std::vector<Rational> acc(p_.rows, Rational(0));
    for (int k = 0; k < p_.rows; ++k) {
      if (b[k].is_zero()) continue;
      for (int i = 0; i < p_.rows; ++i) {
        const Rational& a = p_.matrix[i][basic()[k]];
        if (!a.is_zero()) acc[i] += a * b[k];
      }
    }
    for (int i = 0; i < p_.rows; ++i) {
      if (acc[i] != rhs[i]) {
        throw std::logic_error("exact residual is non-zero: basis solve is inconsistent");
      }
    }
  }

  void pivot(int entering, int position, const std::vector<Rational>& alpha, SimplexOutcome& out) {
    int leaving = basic()[position];
    if (!fact_->replace_column(position, entering, alpha)) {
      throw std::logic_error("zero pivot element on a legal simplex pivot");
    }
    in_basis_[leaving] = false;
    in_basis_[entering] = true;
    ++out.pivots;
    out.phase_log.push_back({out.pivots, entering, leaving});
    if (out.pivots % 64 == 0) check_residual(p_.rhs, beta(p_.rhs));
  }

  bool at_limit(const SimplexOutcome& out) const { return out.pivots >= limit_; }

  bool limit_reached(SimplexOutcome& out) {
    out.status = SimplexStatus::IterationLimit;
    out.basis.columns = basic();
    std::sort(out.basis.columns.begin(), out.basis.columns.end());
    return false;
  }

  // Composite phase one: drive the infeasible basic variables to zero by
  // minimizing the sum of their magnitudes. Entering and leaving choices both
  // use Bland's least-index rule; infeasible variables are treated as free to
  // rise to zero (their bound is temporarily shifted), so no artificial
  // columns are ever added.
  bool primal_phase_one(SimplexOutcome& out) {
    while (true) {
      std::vector<Rational> b = beta(p_.rhs);
      std::vector<char> infeasible(p_.rows, 0);
      bool any = false;
      for (int i = 0; i < p_.rows; ++i) {
        if (b[i].sign() < 0) {
          infeasible[i] = 1;
          any = true;
        }
      }
      if (!any) return true;

      std::vector<Rational> sigma(p_.rows, Rational(0));
      for (int i = 0; i < p_.rows; ++i) {
        if (infeasible[i]) sigma[i] = Rational(1);
      }
      std::vector<Rational> y = fact_->btran(sigma);
      // gradient of the infeasibility sum w.r.t. each non-basic variable
      int entering = -1;
      for (int j = 0; j < p_.columns() && entering < 0; ++j) {
        if (in_basis_[j]) continue;
        Rational d(0);
        for (int i = 0; i < p_.rows; ++i) {
          if (!p_.matrix[i][j].is_zero()) d += y[i] * p_.matrix[i][j];
        }
        if (d.sign() < 0) entering = j;
      }
      if (entering < 0) {
        throw std::logic_error("phase one stalled on an infeasible problem");
      }

      std::vector<Rational> alpha = fact_->ftran(problem_column(p_, entering));
      int position = -1;
      Rational best_ratio(0);
      for (int i = 0; i < p_.rows; ++i) {
        // feasible variables block at zero from above, infeasible ones from below
        bool blocks = infeasible[i] ? alpha[i].sign() < 0 : alpha[i].sign() > 0;
        if (!blocks) continue;
        Rational ratio = b[i] / alpha[i];
        if (position < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basic()[i] < basic()[position])) {
          position = i;
          best_ratio = ratio;
        }
      }
      if (position < 0) {
        throw std::logic_error("unbounded infeasibility descent");
      }
      if (at_limit(out)) return limit_reached(out);
      pivot(entering, position, alpha, out);
    }
  }

  // Standard primal optimality pivots against the given right-hand side,
  // assuming the associated basic solution is feasible.
  bool primal_phase_two(const std::vector<Rational>& rhs, SimplexOutcome& out) {
    while (true) {
      std::vector<Rational> d = current_reduced_costs();
      int entering = -1;
      for (int j = 0; j < p_.columns(); ++j) {
        if (!in_basis_[j] && d[j].sign() < 0) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;  // optimal

      std::vector<Rational> b = beta(rhs);
      std::vector<Rational> alpha = fact_->ftran(problem_column(p_, entering));
      int position = -1;
      Rational best_ratio(0);
      for (int i = 0; i < p_.rows; ++i) {
        if (alpha[i].sign() <= 0) continue;
        Rational ratio = b[i] / alpha[i];
        if (position < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basic()[i] < basic()[position])) {
          position = i;
          best_ratio = ratio;
        }
      }
      if (position < 0) {
        throw std::logic_error("objective unbounded below; reachability LPs are bounded");
      }
      if (at_limit(out)) return limit_reached(out);
      pivot(entering, position, alpha, out);
    }
  }

  // Establish dual feasibility if the start basis lacks it: run primal pivots
  // against a temporary rhs (the basis column sums) that makes the current
  // basis feasible with all basic values one. Dual feasibility of the final
  // basis does not depend on the rhs, so it carries over to the real problem.
  bool dual_phase_one(SimplexOutcome& out) {
    std::vector<Rational> d = current_reduced_costs();
    bool dual_feasible = true;
    for (int j = 0; j < p_.columns() && dual_feasible; ++j) {
      if (!in_basis_[j] && d[j].sign() < 0) dual_feasible = false;
    }
    if (dual_feasible) return true;

    std::vector<Rational> shifted(p_.rows, Rational(0));
    for (int k = 0; k < p_.rows; ++k) {
      for (int i = 0; i < p_.rows; ++i) {
        const Rational& a = p_.matrix[i][basic()[k]];
        if (!a.is_zero()) shifted[i] += a;
      }
    }
    return primal_phase_two(shifted, out);
  }

  bool dual_phase_two(SimplexOutcome& out) {
    while (true) {
      std::vector<Rational> b = beta(p_.rhs);
      int position = -1;
      for (int i = 0; i < p_.rows; ++i) {
        if (b[i].sign() < 0 && (position < 0 || basic()[i] < basic()[position])) {
          position = i;
        }
      }
      if (position < 0) return true;  // feasible and dual feasible

      // row of B^-1 A at the leaving position
      std::vector<Rational> e(p_.rows, Rational(0));
      e[position] = Rational(1);
      std::vector<Rational> z = fact_->btran(e);
      std::vector<Rational> d = current_reduced_costs();

      int entering = -1;
      Rational best_theta(0);
      for (int j = 0; j < p_.columns(); ++j) {
        if (in_basis_[j]) continue;
        Rational rho(0);
        for (int i = 0; i < p_.rows; ++i) {
          if (!p_.matrix[i][j].is_zero()) rho += z[i] * p_.matrix[i][j];
        }
        if (rho.sign() >= 0) continue;
        Rational theta = d[j] / -rho;
        if (entering < 0 || theta < best_theta) {
          entering = j;
          best_theta = theta;
        }
      }
      if (entering < 0) {
        throw std::logic_error("dual unbounded: the problem is infeasible");
      }

      if (at_limit(out)) return limit_reached(out);
      std::vector<Rational> alpha = fact_->ftran(problem_column(p_, entering));
      pivot(entering, position, alpha, out);
    }
  }

  void finish(SimplexOutcome& out) {
    std::vector<Rational> b = beta(p_.rhs);
    check_residual(p_.rhs, b);
    out.status = SimplexStatus::Optimal;
    out.solution.assign(p_.columns(), Rational(0));
    for (int k = 0; k < p_.rows; ++k) out.solution[basic()[k]] = b[k];
    out.objective = Rational(0);
    for (int j = 0; j < p_.columns(); ++j) {
      if (!out.solution[j].is_zero()) out.objective += p_.cost[j] * out.solution[j];
    }
    out.basis.columns = basic();
    std::sort(out.basis.columns.begin(), out.basis.columns.end());
  }

  const LpProblem& p_;
  long limit_;
  std::optional<BasisFactorization> fact_;
  std::vector<bool> in_basis_;
};

}  // namespace

SimplexOutcome primal_simplex(const LpProblem& problem, const Basis& start, long iteration_limit) {
  return Engine(problem, iteration_limit).run_primal(start);
}

SimplexOutcome dual_simplex(const LpProblem& problem, const Basis& start, long iteration_limit) {
  return Engine(problem, iteration_limit).run_dual(start);
}

std::vector<std::string> pivot_log_lines(const LpProblem& problem, const SimplexOutcome& outcome) {
  std::vector<std::string> lines;
  lines.reserve(outcome.phase_log.size());
  for (const PivotRecord& rec : outcome.phase_log) {
    lines.push_back("pivot=" + std::to_string(rec.iteration) +
                    " enter=" + column_name(problem, rec.entering_column) +
                    " leave=" + column_name(problem, rec.leaving_column));
  }
  return lines;
}

}  // namespace exactreach
