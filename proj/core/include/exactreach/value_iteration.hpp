#pragma once

#include <vector>

#include "exactreach/mdp.hpp"
#include "exactreach/qualitative.hpp"

namespace exactreach {

/// Tie-breaking among float-equal optimal transitions when extracting the
/// greedy scheduler. DistanceToTarget prefers the transition whose support is
/// closest to the target in BFS steps (then the canonical index); it avoids
/// value-preserving loops that would make the scheduler non-apt.
enum class TieBreak { DistanceToTarget, TransitionIndex };

struct ValueIterationOptions {
  double epsilon = 1e-6;
  TieBreak tie_break = TieBreak::DistanceToTarget;
  long max_sweeps = 10'000'000;
  bool record_history = false;  // keep every iterate (tests only; small models)
};

/// Finite-precision value-iteration output: the converged iterate per maybe
/// state (indexed by position in analysis.maybe_states) and the greedy
/// candidate scheduler handed to the exact stage.
struct ApproxResult {
  std::vector<double> values;
  Scheduler scheduler;
  long iterations = 0;
  double epsilon = 0.0;
  std::vector<std::vector<double>> history;
};

/**
 * Synchronous value iteration from the zero vector: iterate the Bellman
 * operator x_s <- opt_mu [ sum_{t maybe} mu(t) x_t + sum_{t target} mu(t) ]
 * until the sup-norm difference of consecutive iterates is <= epsilon. The
 * returned scheduler picks, per maybe state, a transition attaining the
 * optimal one-step backup of the final iterate.
 *
 * Throws ValueIterationError{NonFiniteValue} if an iterate leaves IEEE range
 * and {NonConvergence} if max_sweeps is exceeded.
 */
ApproxResult value_iterate(const Mdp& mdp, const MaybeAnalysis& analysis,
                           const ValueIterationOptions& options = {});

}  // namespace exactreach
