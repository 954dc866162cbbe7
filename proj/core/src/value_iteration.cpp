#include "exactreach/value_iteration.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "exactreach/errors.hpp"

namespace exactreach {

namespace {

constexpr int kUnreachable = std::numeric_limits<int>::max();

// BFS distance from every state to the target set, where a maybe state may
// only move along its value-optimal transitions (argbest, by maybe position).
std::vector<int> optimal_subgraph_distances(const Mdp& mdp, const MaybeAnalysis& analysis,
                                            const std::vector<std::vector<int>>& argbest) {
  std::vector<std::vector<int>> pred(mdp.state_count());
  for (int i = 0; i < analysis.maybe_count(); ++i) {
    int s = analysis.maybe_states[i];
    for (int t : argbest[i]) {
      for (const auto& [dest, p] : mdp.transition(t).support) pred[dest].push_back(s);
    }
  }
  std::vector<int> dist(mdp.state_count(), kUnreachable);
  std::deque<int> queue;
  for (int s = 0; s < mdp.state_count(); ++s) {
    if (analysis.target_states[s]) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    int t = queue.front();
    queue.pop_front();
    for (int s : pred[t]) {
      if (dist[s] == kUnreachable) {
        dist[s] = dist[t] + 1;
        queue.push_back(s);
      }
    }
  }
  return dist;
}

}  // namespace

ApproxResult value_iterate(const Mdp& mdp, const MaybeAnalysis& analysis,
                           const ValueIterationOptions& options) {
  if (options.epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  const bool maximize = analysis.objective == Objective::Max;
  const int n = analysis.maybe_count();

  ApproxResult result;
  result.epsilon = options.epsilon;
  result.scheduler = Scheduler(mdp.state_count());
  if (n == 0) return result;

  // Per maybe state: enabled transitions as (maybe position, weight) pairs
  // plus the constant one-step mass into the target. Probabilities are
  // converted to double once, with round-to-nearest.
  struct Backup {
    int transition;
    double target_mass;
    std::vector<std::pair<int, double>> maybe_mass;
  };
  std::vector<std::vector<Backup>> backups(n);
  for (int i = 0; i < n; ++i) {
    int s = analysis.maybe_states[i];
    auto [first, last] = mdp.enabled_range(s);
    for (int t = first; t < last; ++t) {
      Backup b{t, 0.0, {}};
      for (const auto& [dest, p] : mdp.transition(t).support) {
        if (analysis.target_states[dest]) {
          b.target_mass += p.to_double();
        } else if (analysis.maybe_index[dest] >= 0) {
          b.maybe_mass.emplace_back(analysis.maybe_index[dest], p.to_double());
        }
      }
      backups[i].push_back(std::move(b));
    }
  }

  std::vector<double> x(n, 0.0), next(n, 0.0);
  if (options.record_history) result.history.push_back(x);
  long sweeps = 0;
  while (true) {
    if (sweeps >= options.max_sweeps) {
      throw ValueIterationError(ValueIterationError::Code::NonConvergence,
                                "value iteration did not converge within " +
                                    std::to_string(options.max_sweeps) + " sweeps");
    }
    double delta = 0.0;
    for (int i = 0; i < n; ++i) {
      double best = maximize ? -std::numeric_limits<double>::infinity()
                             : std::numeric_limits<double>::infinity();
      for (const Backup& b : backups[i]) {
        double q = b.target_mass;
        for (const auto& [j, w] : b.maybe_mass) q += w * x[j];
        if (maximize ? q > best : q < best) best = q;
      }
      if (!std::isfinite(best)) {
        throw ValueIterationError(ValueIterationError::Code::NonFiniteValue,
                                  "non-finite iterate at state " +
                                      std::to_string(analysis.maybe_states[i]));
      }
      next[i] = best;
      delta = std::max(delta, std::abs(next[i] - x[i]));
    }
    std::swap(x, next);
    ++sweeps;
    if (options.record_history) result.history.push_back(x);
    if (delta <= options.epsilon) break;
  }
  result.values = x;
  result.iterations = sweeps;

  // Greedy scheduler at the final iterate. Ties (exact double equality) are
  // broken by the BFS distance to the target measured in the subgraph of
  // value-optimal transitions: a transition only counts as making progress if
  // optimal play can continue towards the target behind it. Plain
  // full-graph distances are not enough: a value-preserving self-loop ties
  // with a genuine step whenever its own source is close to the target via
  // some other transition. Remaining ties fall back to the canonical index.
  std::vector<double> best(n);
  std::vector<std::vector<int>> argbest(n);
  for (int i = 0; i < n; ++i) {
    for (const Backup& b : backups[i]) {
      double q = b.target_mass;
      for (const auto& [j, w] : b.maybe_mass) q += w * x[j];
      bool better = argbest[i].empty() || (maximize ? q > best[i] : q < best[i]);
      if (better) {
        best[i] = q;
        argbest[i].clear();
        argbest[i].push_back(b.transition);
      } else if (q == best[i]) {
        argbest[i].push_back(b.transition);
      }
    }
  }

  std::vector<int> dist;
  if (maximize && options.tie_break == TieBreak::DistanceToTarget) {
    dist = optimal_subgraph_distances(mdp, analysis, argbest);
  }
  for (int i = 0; i < n; ++i) {
    int chosen = argbest[i].front();
    if (!dist.empty() && argbest[i].size() > 1) {
      int best_key = kUnreachable;
      for (int t : argbest[i]) {
        int key = kUnreachable;
        for (const auto& [d, p] : mdp.transition(t).support) {
          if (dist[d] != kUnreachable) key = std::min(key, dist[d]);
        }
        if (key < best_key) {
          best_key = key;
          chosen = t;
        }
      }
    }
    result.scheduler.set(analysis.maybe_states[i], chosen);
  }
  return result;
}

}  // namespace exactreach
