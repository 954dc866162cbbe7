#include "exactreach/oracle.hpp"

#include <deque>
#include <stdexcept>

#include "exactreach/errors.hpp"

namespace exactreach {

namespace {

// Plain rational Gaussian elimination for A v = rhs, partial pivoting by the
// largest absolute pivot in the column to keep entry bit-lengths in check.
std::vector<Rational> solve_linear_system(std::vector<std::vector<Rational>> a,
                                          std::vector<Rational> rhs) {
  const int n = static_cast<int>(rhs.size());
  for (int k = 0; k < n; ++k) {
    int pivot = -1;
    Rational best(0);
    for (int i = k; i < n; ++i) {
      Rational mag = abs(a[i][k]);
      if (pivot < 0 || mag > best) {
        pivot = i;
        best = mag;
      }
    }
    if (best.is_zero()) {
      throw std::logic_error("singular linear system in chain evaluation");
    }
    std::swap(a[k], a[pivot]);
    std::swap(rhs[k], rhs[pivot]);
    for (int i = k + 1; i < n; ++i) {
      if (a[i][k].is_zero()) continue;
      Rational f = a[i][k] / a[k][k];
      a[i][k] = Rational(0);
      for (int j = k + 1; j < n; ++j) {
        if (!a[k][j].is_zero()) a[i][j] -= f * a[k][j];
      }
      rhs[i] -= f * rhs[k];
    }
  }
  std::vector<Rational> v(n, Rational(0));
  for (int k = n - 1; k >= 0; --k) {
    Rational acc = rhs[k];
    for (int j = k + 1; j < n; ++j) {
      if (!a[k][j].is_zero()) acc -= a[k][j] * v[j];
    }
    v[k] = acc / a[k][k];
  }
  return v;
}

// States of the chain that can reach the target at all (graph reachability;
// deliberately local so the oracle stays independent of the qualitative module).
std::vector<bool> chain_reaches_target(const MarkovChain& chain, const StateSet& target) {
  const Mdp& mdp = chain.mdp();
  std::vector<std::vector<int>> pred(mdp.state_count());
  for (const Transition& t : mdp.transitions()) {
    for (const auto& [dest, p] : t.support) pred[dest].push_back(t.source);
  }
  std::vector<bool> reaches(mdp.state_count(), false);
  std::deque<int> worklist;
  for (int s = 0; s < mdp.state_count(); ++s) {
    if (target[s]) {
      reaches[s] = true;
      worklist.push_back(s);
    }
  }
  while (!worklist.empty()) {
    int t = worklist.front();
    worklist.pop_front();
    for (int s : pred[t]) {
      if (!reaches[s]) {
        reaches[s] = true;
        worklist.push_back(s);
      }
    }
  }
  return reaches;
}

long count_schedulers(const Mdp& mdp, const StateSet& skip) {
  long count = 1;
  for (int s = 0; s < mdp.state_count(); ++s) {
    if (skip[s]) continue;
    count *= mdp.enabled_count(s);
    if (count > 1'000'000) {
      throw OracleError(OracleError::Code::TooManySchedulers,
                        "more than 10^6 schedulers to enumerate");
    }
  }
  return count;
}

}  // namespace

std::vector<Rational> chain_reach_exact(const MarkovChain& chain, const StateSet& target) {
  const Mdp& mdp = chain.mdp();
  const int n = mdp.state_count();
  std::vector<bool> reaches = chain_reaches_target(chain, target);

  // Unknowns: states that reach the target but are not in it themselves.
  std::vector<int> index(n, -1);
  std::vector<int> unknowns;
  for (int s = 0; s < n; ++s) {
    if (reaches[s] && !target[s]) {
      index[s] = static_cast<int>(unknowns.size());
      unknowns.push_back(s);
    }
  }

  std::vector<Rational> values(n, Rational(0));
  for (int s = 0; s < n; ++s) {
    if (target[s]) values[s] = Rational(1);
  }
  if (unknowns.empty()) return values;

  const int k = static_cast<int>(unknowns.size());
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k, Rational(0)));
  std::vector<Rational> rhs(k, Rational(0));
  for (int i = 0; i < k; ++i) {
    int s = unknowns[i];
    a[i][i] = Rational(1);
    for (const auto& [dest, p] : chain.transition_of(s).support) {
      if (target[dest]) {
        rhs[i] += p;
      } else if (index[dest] >= 0) {
        a[i][index[dest]] -= p;
      }
      // mass into non-reaching states contributes zero
    }
  }
  std::vector<Rational> v = solve_linear_system(std::move(a), std::move(rhs));
  for (int i = 0; i < k; ++i) values[unknowns[i]] = v[i];
  return values;
}

OracleResult brute_force_optimal(const Mdp& mdp, const StateSet& target, Objective objective) {
  const int n = mdp.state_count();
  // Choices at target states never influence any value; fix them to the first
  // enabled transition and enumerate the rest.
  count_schedulers(mdp, target);

  std::vector<int> vary;
  for (int s = 0; s < n; ++s) {
    if (!target[s] && mdp.enabled_count(s) > 1) vary.push_back(s);
  }

  Scheduler base(n);
  for (int s = 0; s < n; ++s) base.set(s, mdp.enabled_range(s).first);

  auto evaluate = [&](const Scheduler& eta) {
    return chain_reach_exact(induced_chain(mdp, eta), target);
  };

  // Odometer over the varying states, last state fastest: enumeration order is
  // lexicographic in the per-state choice tuple.
  auto for_each_scheduler = [&](auto&& visit) {
    std::vector<int> digits(vary.size(), 0);
    Scheduler eta = base;
    while (true) {
      for (std::size_t i = 0; i < vary.size(); ++i) {
        eta.set(vary[i], mdp.enabled_range(vary[i]).first + digits[i]);
      }
      if (!visit(eta)) return;
      int pos = static_cast<int>(vary.size()) - 1;
      while (pos >= 0 && digits[pos] + 1 >= mdp.enabled_count(vary[pos])) {
        digits[pos] = 0;
        --pos;
      }
      if (pos < 0) return;
      ++digits[pos];
    }
  };

  const bool maximize = objective == Objective::Max;
  std::vector<Rational> best;
  long examined = 0;
  for_each_scheduler([&](const Scheduler& eta) {
    std::vector<Rational> v = evaluate(eta);
    if (best.empty()) {
      best = std::move(v);
    } else {
      for (int s = 0; s < n; ++s) {
        if (maximize ? v[s] > best[s] : v[s] < best[s]) best[s] = v[s];
      }
    }
    ++examined;
    return true;
  });

  // Second pass: first scheduler (canonical order) attaining the optimum at
  // every state simultaneously; one exists because a uniformly optimal
  // memoryless deterministic scheduler exists.
  OracleResult result;
  result.values = best;
  result.schedulers_examined = examined;
  bool found = false;
  for_each_scheduler([&](const Scheduler& eta) {
    if (evaluate(eta) == best) {
      result.argopt = eta;
      found = true;
      return false;
    }
    return true;
  });
  if (!found) throw std::logic_error("no uniformly optimal scheduler found");
  return result;
}

OracleResult exact_policy_iteration(const Mdp& mdp, const MaybeAnalysis& analysis,
                                    const Scheduler& start) {
  const bool maximize = analysis.objective == Objective::Max;
  if (maximize && !is_apt(mdp, analysis, start)) {
    throw OracleError(OracleError::Code::NonAptStart,
                      "policy iteration for Max requires an apt starting scheduler");
  }

  // The completion must realize probability 0 at the zero states, otherwise
  // the evaluation chain would leak value through them under Min.
  Scheduler completion = zero_respecting_completion(mdp, analysis);

  Scheduler eta(mdp.state_count());
  for (int s : analysis.maybe_states) eta.set(s, start.at(s));

  auto backup = [&](const Transition& t, const std::vector<Rational>& v) {
    Rational q(0);
    for (const auto& [dest, p] : t.support) q += p * v[dest];
    return q;
  };

  long evaluations = 0;
  std::vector<Rational> values;
  std::vector<Rational> previous;
  while (true) {
    values = chain_reach_exact(induced_chain(mdp, eta, completion), analysis.target_states);
    ++evaluations;
    if (!previous.empty()) {
      // Strictly improving switches must improve the value vector monotonically;
      // this is what guarantees termination.
      bool strict = false;
      for (int s : analysis.maybe_states) {
        if (maximize ? values[s] < previous[s] : values[s] > previous[s]) {
          throw std::logic_error("policy iteration regressed at state " + std::to_string(s));
        }
        strict = strict || values[s] != previous[s];
      }
      if (!strict) throw std::logic_error("policy iteration made no progress");
    }
    previous = values;

    Scheduler improved = eta;
    bool changed = false;
    for (int s : analysis.maybe_states) {
      auto [first, last] = mdp.enabled_range(s);
      Rational best = values[s];
      int best_t = -1;
      for (int t = first; t < last; ++t) {
        Rational q = backup(mdp.transition(t), values);
        if (maximize ? q > best : q < best) {
          best = q;
          best_t = t;
        }
      }
      if (best_t >= 0) {
        improved.set(s, best_t);
        changed = true;
      }
    }
    if (!changed) break;
    if (maximize && !is_apt(mdp, analysis, improved)) {
      // Strictly improving switches preserve apt-ness; reaching this line
      // means a bug upstream, not a property of the input.
      throw std::logic_error("policy improvement produced a non-apt scheduler");
    }
    eta = improved;
  }

  OracleResult result;
  result.values = std::move(values);
  result.argopt = eta;
  result.schedulers_examined = evaluations;
  return result;
}

}  // namespace exactreach
