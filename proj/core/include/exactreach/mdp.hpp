#pragma once

#include <string>
#include <utility>
#include <vector>

#include "exactreach/rational.hpp"

namespace exactreach {

/**
 * One transition of an MDP: a source state together with a discrete
 * probability distribution over successor states. The support is stored
 * sorted by destination id, every stored probability is positive and the
 * probabilities sum to exactly one.
 */
struct Transition {
  int source = 0;
  std::string action;  // cosmetic, "-" when unnamed
  std::vector<std::pair<int, Rational>> support;

  /// Probability of moving to `dest` (zero if not in the support).
  Rational probability(int dest) const;

  bool operator==(const Transition&) const = default;
};

struct RawTransition {
  int source = 0;
  std::string action;
  std::vector<std::pair<int, Rational>> support;
};

/// An unvalidated model description, as produced by a parser or built by hand.
struct RawModel {
  int state_count = 0;
  std::vector<RawTransition> transitions;
};

/**
 * A validated Markov decision process.
 *
 * States are contiguous ids 0..state_count()-1. Transitions are held in
 * canonical order: grouped by source state in ascending state order, while the
 * relative order of the transitions of one state preserves the input order.
 * Every state has at least one enabled transition. Instances are immutable
 * after construction and safe to share across threads.
 */
class Mdp {
 public:
  Mdp() = default;  // empty placeholder; validate_mdp produces the real thing

  int state_count() const { return state_count_; }
  int transition_count() const { return static_cast<int>(transitions_.size()); }

  const Transition& transition(int t) const { return transitions_[t]; }
  const std::vector<Transition>& transitions() const { return transitions_; }

  /// Canonical transition ids enabled in `s`, as the half-open range [first, last).
  std::pair<int, int> enabled_range(int s) const { return enabled_[s]; }
  int enabled_count(int s) const { return enabled_[s].second - enabled_[s].first; }

  /// Maps canonical transition ids back to positions in the raw input.
  const std::vector<int>& input_order() const { return input_order_; }

  bool operator==(const Mdp& other) const {
    return state_count_ == other.state_count_ && transitions_ == other.transitions_;
  }

  friend Mdp validate_mdp(const RawModel& raw);

 private:
  int state_count_ = 0;
  std::vector<Transition> transitions_;
  std::vector<std::pair<int, int>> enabled_;
  std::vector<int> input_order_;
};

/**
 * Checks a raw model against the MDP well-formedness rules and produces the
 * canonical representation. Throws ValidationError with code
 * DistributionNotStochastic, EmptyEnabledSet, DanglingTarget or
 * InvalidProbability.
 */
Mdp validate_mdp(const RawModel& raw);

/**
 * A memoryless deterministic scheduler: a partial map from states to enabled
 * transitions. The domain is whatever set of states it was built for
 * (typically the maybe states).
 */
class Scheduler {
 public:
  Scheduler() = default;
  explicit Scheduler(int state_count) : choice_(state_count, -1) {}

  int state_count() const { return static_cast<int>(choice_.size()); }
  bool has(int state) const { return choice_[state] >= 0; }
  int at(int state) const;
  void set(int state, int transition) { choice_[state] = transition; }

  /// States with a defined choice, ascending.
  std::vector<int> domain() const;

  bool operator==(const Scheduler&) const = default;

 private:
  std::vector<int> choice_;
};

/// An MDP in which every state has exactly one enabled transition.
class MarkovChain {
 public:
  /// Throws ValidationError{NotAMarkovChain} if some state has several choices.
  static MarkovChain from_mdp(Mdp mdp);

  const Mdp& mdp() const { return mdp_; }
  int state_count() const { return mdp_.state_count(); }

  /// The single transition enabled in `s`.
  const Transition& transition_of(int s) const { return mdp_.transition(mdp_.enabled_range(s).first); }

  /// The one scheduler the chain admits.
  Scheduler unique_scheduler() const;

 private:
  explicit MarkovChain(Mdp mdp) : mdp_(std::move(mdp)) {}
  Mdp mdp_;
};

/**
 * The Markov chain induced by a scheduler: keeps exactly the chosen transition
 * of every state, state ids unchanged. `eta` usually covers the maybe states
 * and `completion` the rest; where both define a state, `eta` wins. Throws
 * ValidationError{IncompleteScheduler} if some state is covered by neither.
 */
MarkovChain induced_chain(const Mdp& mdp, const Scheduler& eta, const Scheduler& completion);
MarkovChain induced_chain(const Mdp& mdp, const Scheduler& total);

/// A finite path: a start state and alternating (transition, state) steps.
struct PathStep {
  int transition = 0;
  int state = 0;
};
struct FinitePath {
  int start = 0;
  std::vector<PathStep> steps;
};

/**
 * Probability of `path` under scheduler `eta` when starting from `start`:
 * the product of its step probabilities if the path starts at `start` and
 * follows `eta`, and zero otherwise. Throws ValidationError{MalformedPath}
 * when a step uses a transition that is not enabled at the preceding state or
 * moves to a state outside the transition's support.
 */
Rational path_probability(const Mdp& mdp, const Scheduler& eta, int start, const FinitePath& path);

}  // namespace exactreach
