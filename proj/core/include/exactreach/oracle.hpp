#pragma once

#include <vector>

#include "exactreach/mdp.hpp"
#include "exactreach/qualitative.hpp"

namespace exactreach {

/// Ground-truth result: exact per-state reachability probabilities, a
/// scheduler attaining them at every state simultaneously, and how many
/// schedulers (or policy evaluations) were examined to find it.
struct OracleResult {
  std::vector<Rational> values;
  Scheduler argopt;
  long schedulers_examined = 0;
};

/**
 * Exact reachability probabilities of a Markov chain, one entry per state.
 *
 * Computes the chain's own zero set by graph reachability, then solves
 * (I - P) v = r over the remaining states with exact rational Gaussian
 * elimination, where P is the transition matrix restricted to those states
 * and r collects the one-step mass into the target.
 */
std::vector<Rational> chain_reach_exact(const MarkovChain& chain, const StateSet& target);

/**
 * Enumerates every memoryless deterministic scheduler, evaluates each induced
 * chain exactly, and returns the pointwise max (min) together with a scheduler
 * attaining it at all states. Guarded: throws OracleError{TooManySchedulers}
 * when the number of schedulers exceeds 10^6.
 */
OracleResult brute_force_optimal(const Mdp& mdp, const StateSet& target, Objective objective);

/**
 * Exact policy iteration, Howard-style: evaluate the current scheduler's
 * chain exactly, switch every state with a strictly improving transition,
 * repeat until no improvement exists. For the Max objective the start must be
 * apt (throws OracleError{NonAptStart} otherwise); improvements provably
 * preserve apt-ness, which is re-checked every round.
 */
OracleResult exact_policy_iteration(const Mdp& mdp, const MaybeAnalysis& analysis,
                                    const Scheduler& start);

}  // namespace exactreach
