#include "exactreach/qualitative.hpp"

#include <deque>
#include <stdexcept>

namespace exactreach {

StateSet make_state_set(int state_count, std::initializer_list<int> states) {
  StateSet set(state_count, false);
  for (int s : states) set[s] = true;
  return set;
}

StateSet make_state_set(int state_count, const std::vector<int>& states) {
  StateSet set(state_count, false);
  for (int s : states) set[s] = true;
  return set;
}

std::vector<int> set_to_ids(const StateSet& set) {
  std::vector<int> ids;
  for (int s = 0; s < static_cast<int>(set.size()); ++s) {
    if (set[s]) ids.push_back(s);
  }
  return ids;
}

namespace {

// Predecessor lists over the support graph, built once per fixpoint.
std::vector<std::vector<int>> predecessor_states(const Mdp& mdp) {
  std::vector<std::vector<int>> pred(mdp.state_count());
  for (const Transition& t : mdp.transitions()) {
    for (const auto& [dest, p] : t.support) pred[dest].push_back(t.source);
  }
  return pred;
}

}  // namespace

StateSet prob0_max(const Mdp& mdp, const StateSet& target) {
  auto pred = predecessor_states(mdp);
  StateSet reaches(mdp.state_count(), false);
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
  StateSet zero(mdp.state_count(), false);
  for (int s = 0; s < mdp.state_count(); ++s) zero[s] = !reaches[s];
  return zero;
}

StateSet prob0_min(const Mdp& mdp, const StateSet& target) {
  const int n = mdp.state_count();
  const int m = mdp.transition_count();

  // alive = candidate avoiding set; a state survives while it has a transition
  // whose whole support is alive. bad[t] counts support entries outside alive.
  StateSet alive(n, false);
  for (int s = 0; s < n; ++s) alive[s] = !target[s];

  std::vector<int> bad(m, 0);
  std::vector<int> good_transitions(n, 0);
  std::vector<std::vector<int>> touching(n);  // state -> transitions with it in the support
  for (int t = 0; t < m; ++t) {
    for (const auto& [dest, p] : mdp.transition(t).support) {
      if (!alive[dest]) ++bad[t];
      touching[dest].push_back(t);
    }
  }
  for (int s = 0; s < n; ++s) {
    auto [first, last] = mdp.enabled_range(s);
    for (int t = first; t < last; ++t) {
      if (bad[t] == 0) ++good_transitions[s];
    }
  }

  std::deque<int> worklist;
  for (int s = 0; s < n; ++s) {
    if (alive[s] && good_transitions[s] == 0) worklist.push_back(s);
  }
  while (!worklist.empty()) {
    int dying = worklist.front();
    worklist.pop_front();
    if (!alive[dying]) continue;
    alive[dying] = false;
    for (int t : touching[dying]) {
      if (bad[t]++ == 0) {
        int src = mdp.transition(t).source;
        if (alive[src] && --good_transitions[src] == 0) worklist.push_back(src);
      }
    }
  }
  return alive;
}

MaybeAnalysis maybe_states(const Mdp& mdp, const StateSet& target, Objective objective) {
  MaybeAnalysis analysis;
  analysis.objective = objective;
  analysis.target_states = target;
  analysis.zero_states =
      objective == Objective::Max ? prob0_max(mdp, target) : prob0_min(mdp, target);
  analysis.maybe_index.assign(mdp.state_count(), -1);
  for (int s = 0; s < mdp.state_count(); ++s) {
    if (!target[s] && !analysis.zero_states[s]) {
      analysis.maybe_index[s] = static_cast<int>(analysis.maybe_states.size());
      analysis.maybe_states.push_back(s);
    }
  }
  return analysis;
}

Scheduler zero_respecting_completion(const Mdp& mdp, const MaybeAnalysis& analysis) {
  Scheduler completion(mdp.state_count());
  for (int s = 0; s < mdp.state_count(); ++s) {
    if (analysis.is_maybe(s)) continue;
    auto [first, last] = mdp.enabled_range(s);
    int chosen = first;
    if (analysis.objective == Objective::Min && analysis.zero_states[s]) {
      chosen = -1;
      for (int t = first; t < last && chosen < 0; ++t) {
        bool stays = true;
        for (const auto& [dest, p] : mdp.transition(t).support) {
          stays = stays && analysis.zero_states[dest];
        }
        if (stays) chosen = t;
      }
      if (chosen < 0) {
        // S^inf0 is by construction closed under some transition per state
        throw std::logic_error("zero state without a certifying transition");
      }
    }
    completion.set(s, chosen);
  }
  return completion;
}

bool is_apt(const Mdp& mdp, const MaybeAnalysis& analysis, const Scheduler& eta) {
  if (analysis.objective == Objective::Min) return true;

  // Backward reachability from the target along chosen transitions only.
  std::vector<std::vector<int>> pred(mdp.state_count());
  for (int s : analysis.maybe_states) {
    const Transition& t = mdp.transition(eta.at(s));
    for (const auto& [dest, p] : t.support) pred[dest].push_back(s);
  }
  StateSet reaches(mdp.state_count(), false);
  std::deque<int> worklist;
  for (int s = 0; s < mdp.state_count(); ++s) {
    if (analysis.target_states[s]) {
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
  for (int s : analysis.maybe_states) {
    if (!reaches[s]) return false;
  }
  return true;
}

}  // namespace exactreach
