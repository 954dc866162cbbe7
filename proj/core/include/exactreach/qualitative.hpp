#pragma once

#include <initializer_list>
#include <vector>

#include "exactreach/mdp.hpp"

namespace exactreach {

enum class Objective { Max, Min };

/// A set of states, indexed by state id.
using StateSet = std::vector<bool>;

StateSet make_state_set(int state_count, std::initializer_list<int> states);
StateSet make_state_set(int state_count, const std::vector<int>& states);
std::vector<int> set_to_ids(const StateSet& set);

/**
 * The qualitative partition of the state space for one objective: target
 * states (probability 1 by membership), zero states (extremal probability 0,
 * found by graph fixpoints) and the remaining maybe states, which are the LP
 * variables. The three sets partition the state space and `maybe_states` is
 * sorted ascending; that order fixes the s_1..s_n numbering everything
 * downstream relies on.
 */
struct MaybeAnalysis {
  Objective objective = Objective::Max;
  StateSet zero_states;
  StateSet target_states;
  std::vector<int> maybe_states;
  std::vector<int> maybe_index;  // state id -> position in maybe_states, or -1

  bool is_maybe(int s) const { return maybe_index[s] >= 0; }
  int maybe_count() const { return static_cast<int>(maybe_states.size()); }
};

/**
 * States from which no scheduler reaches `target` with positive probability.
 * Computed as the complement of backward reachability; purely graph-based,
 * no arithmetic beyond positivity of the stored probabilities.
 */
StateSet prob0_max(const Mdp& mdp, const StateSet& target);

/**
 * States from which some scheduler avoids `target` with probability 1: the
 * largest set R disjoint from the target such that every state of R has a
 * transition whose full support stays inside R.
 */
StateSet prob0_min(const Mdp& mdp, const StateSet& target);

/// Assembles the target / zero / maybe partition for the objective.
MaybeAnalysis maybe_states(const Mdp& mdp, const StateSet& target, Objective objective);

/**
 * A scheduler is apt iff it reaches the target with positive probability from
 * every maybe state, i.e. every maybe state can reach the target along chosen
 * transitions in the induced chain. For the Min objective every scheduler is
 * apt. Graph reachability only.
 */
bool is_apt(const Mdp& mdp, const MaybeAnalysis& analysis, const Scheduler& eta);

/**
 * A completion over the non-maybe states whose induced chain realizes
 * probability 0 at every zero state: for the Min objective the choice at a
 * zero state keeps the full support inside the zero set (such a transition
 * exists by construction of S^inf0); for Max any choice does, since those
 * states cannot reach the target at all. With this completion the values of
 * the chain induced by any scheduler agree with the linear system in which
 * mass into zero states vanishes.
 */
Scheduler zero_respecting_completion(const Mdp& mdp, const MaybeAnalysis& analysis);

}  // namespace exactreach
