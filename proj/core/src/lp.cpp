#include "exactreach/lp.hpp"

#include <algorithm>
#include <ostream>

#include "exactreach/errors.hpp"

namespace exactreach {

LpProblem build_lp(const Mdp& mdp, const MaybeAnalysis& analysis) {
  const int n = analysis.maybe_count();
  if (n == 0) {
    throw LpBuildError(LpBuildError::Code::EmptyMaybeSet, "no maybe states, nothing to solve");
  }
  const bool maximize = analysis.objective == Objective::Max;

  LpProblem p;
  p.objective = analysis.objective;
  p.state_columns = n;
  for (int s : analysis.maybe_states) {
    auto [first, last] = mdp.enabled_range(s);
    for (int t = first; t < last; ++t) {
      p.row_transition.push_back(t);
      p.row_source.push_back(s);
    }
  }
  p.rows = static_cast<int>(p.row_transition.size());
  const int m = p.rows;

  p.column_identity.reserve(n + m);
  for (int j = 0; j < n; ++j) {
    p.column_identity.push_back({ColumnIdentity::Kind::State, analysis.maybe_states[j]});
  }
  for (int i = 0; i < m; ++i) {
    p.column_identity.push_back({ColumnIdentity::Kind::Slack, p.row_transition[i]});
  }

  p.matrix.assign(m, std::vector<Rational>(n + m, Rational(0)));
  p.rhs.assign(m, Rational(0));
  for (int i = 0; i < m; ++i) {
    const Transition& t = mdp.transition(p.row_transition[i]);
    std::vector<Rational>& row = p.matrix[i];
    Rational target_mass(0);
    for (const auto& [dest, prob] : t.support) {
      if (analysis.target_states[dest]) {
        target_mass += prob;
      } else if (int j = analysis.maybe_index[dest]; j >= 0) {
        row[j] += prob;  // mass into zero states vanishes
      }
    }
    int source_col = analysis.maybe_index[t.source];
    row[source_col] -= Rational(1);
    if (!maximize) {
      for (int j = 0; j < n; ++j) row[j] = -row[j];
    }
    row[n + i] = Rational(1);
    p.rhs[i] = maximize ? -target_mass : target_mass;
  }

  p.cost.assign(n + m, Rational(0));
  for (int j = 0; j < n; ++j) p.cost[j] = maximize ? Rational(1) : Rational(-1);
  return p;
}

Basis basis_from_scheduler(const LpProblem& problem, const Scheduler& eta) {
  const int n = problem.state_columns;
  Basis basis;
  basis.columns.reserve(problem.rows);
  for (int j = 0; j < n; ++j) basis.columns.push_back(j);

  // Every maybe state must contribute exactly one chosen row; the slacks of
  // all other rows enter the basis, giving n + (m - n) = m columns. State
  // columns are sorted by state id, so the column of a state is found by
  // binary search.
  auto column_of_state = [&](int state) {
    int lo = 0, hi = n - 1;
    while (lo <= hi) {
      int mid = (lo + hi) / 2;
      int id = problem.column_identity[mid].id;
      if (id == state) return mid;
      if (id < state) lo = mid + 1; else hi = mid - 1;
    }
    return -1;
  };

  std::vector<bool> chosen_seen(n, false);
  for (int i = 0; i < problem.rows; ++i) {
    int source = problem.row_source[i];
    if (eta.state_count() <= source || !eta.has(source)) {
      throw LpBuildError(LpBuildError::Code::SchedulerDomainMismatch,
                         "scheduler has no choice for maybe state " + std::to_string(source));
    }
    if (eta.at(source) == problem.row_transition[i]) {
      chosen_seen[column_of_state(source)] = true;
    } else {
      basis.columns.push_back(n + i);
    }
  }
  for (int j = 0; j < n; ++j) {
    if (!chosen_seen[j]) {
      throw LpBuildError(LpBuildError::Code::SchedulerDomainMismatch,
                         "scheduler choice for state " +
                             std::to_string(problem.column_identity[j].id) +
                             " is not an enabled transition of that state");
    }
  }
  return basis;
}

Basis default_basis(const LpProblem& problem) {
  Basis basis;
  basis.columns.resize(problem.rows);
  for (int i = 0; i < problem.rows; ++i) basis.columns[i] = problem.state_columns + i;
  return basis;
}

std::string column_name(const LpProblem& problem, int column) {
  const ColumnIdentity& ident = problem.column_identity[column];
  if (ident.kind == ColumnIdentity::Kind::State) return "x_s" + std::to_string(ident.id);
  return "w_t" + std::to_string(ident.id);
}

void write_lp_text(const LpProblem& problem, std::ostream& os) {
  os << "\\ reachability LP (" << (problem.objective == Objective::Max ? "max" : "min")
     << " objective), coefficients are exact rationals\n";
  os << "Minimize\n obj:";
  for (int j = 0; j < problem.columns(); ++j) {
    if (problem.cost[j].is_zero()) continue;
    os << (problem.cost[j].sign() > 0 ? " + " : " - ") << abs(problem.cost[j]).fraction_string()
       << " " << column_name(problem, j);
  }
  os << "\nSubject To\n";
  for (int i = 0; i < problem.rows; ++i) {
    os << " r" << i << ":";
    for (int j = 0; j < problem.columns(); ++j) {
      const Rational& a = problem.matrix[i][j];
      if (a.is_zero()) continue;
      os << (a.sign() > 0 ? " + " : " - ") << abs(a).fraction_string() << " "
         << column_name(problem, j);
    }
    os << " = " << problem.rhs[i].fraction_string() << "\n";
  }
  os << "Bounds\n";
  for (int j = 0; j < problem.columns(); ++j) {
    os << " " << column_name(problem, j) << " >= 0\n";
  }
  os << "End\n";
}

}  // namespace exactreach
