#include "exactreach/mdp.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "exactreach/errors.hpp"

namespace exactreach {

Rational Transition::probability(int dest) const {
  auto it = std::lower_bound(support.begin(), support.end(), dest,
                             [](const auto& entry, int s) { return entry.first < s; });
  if (it != support.end() && it->first == dest) return it->second;
  return Rational(0);
}

Mdp validate_mdp(const RawModel& raw) {
  if (raw.state_count <= 0) {
    throw ValidationError(ValidationError::Code::EmptyEnabledSet, "model has no states");
  }

  for (std::size_t i = 0; i < raw.transitions.size(); ++i) {
    const RawTransition& t = raw.transitions[i];
    if (t.source < 0 || t.source >= raw.state_count) {
      throw ValidationError(ValidationError::Code::DanglingTarget,
                            "transition " + std::to_string(i) + " has unknown source state " +
                                std::to_string(t.source));
    }
    Rational sum(0);
    for (const auto& [dest, p] : t.support) {
      if (dest < 0 || dest >= raw.state_count) {
        throw ValidationError(ValidationError::Code::DanglingTarget,
                              "transition " + std::to_string(i) + " puts probability on unknown state " +
                                  std::to_string(dest));
      }
      if (p.sign() <= 0) {
        throw ValidationError(ValidationError::Code::InvalidProbability,
                              "transition " + std::to_string(i) + " has non-positive probability " +
                                  p.fraction_string() + " on state " + std::to_string(dest));
      }
      sum += p;
    }
    if (sum != Rational(1)) {
      throw ValidationError(ValidationError::Code::DistributionNotStochastic,
                            "transition " + std::to_string(i) + " of state " + std::to_string(t.source) +
                                " sums to " + sum.fraction_string() + ", expected 1");
    }
  }

  // Canonical order: stable sort by source keeps the input order within a state.
  std::vector<int> order(raw.transitions.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return raw.transitions[a].source < raw.transitions[b].source; });

  Mdp mdp;
  mdp.state_count_ = raw.state_count;
  mdp.transitions_.reserve(raw.transitions.size());
  mdp.input_order_ = order;
  for (int idx : order) {
    const RawTransition& t = raw.transitions[idx];
    Transition canon;
    canon.source = t.source;
    canon.action = t.action.empty() ? "-" : t.action;
    canon.support = t.support;
    std::sort(canon.support.begin(), canon.support.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 1; k < canon.support.size(); ++k) {
      if (canon.support[k].first == canon.support[k - 1].first) {
        throw ValidationError(ValidationError::Code::InvalidProbability,
                              "transition of state " + std::to_string(t.source) +
                                  " lists destination " + std::to_string(canon.support[k].first) +
                                  " twice");
      }
    }
    mdp.transitions_.push_back(std::move(canon));
  }

  mdp.enabled_.assign(raw.state_count, {0, 0});
  int pos = 0;
  for (int s = 0; s < raw.state_count; ++s) {
    int first = pos;
    while (pos < mdp.transition_count() && mdp.transitions_[pos].source == s) ++pos;
    if (pos == first) {
      throw ValidationError(ValidationError::Code::EmptyEnabledSet,
                            "state " + std::to_string(s) + " has no enabled transition");
    }
    mdp.enabled_[s] = {first, pos};
  }
  return mdp;
}

int Scheduler::at(int state) const {
  int c = choice_[state];
  if (c < 0) throw std::out_of_range("scheduler has no choice for state " + std::to_string(state));
  return c;
}

std::vector<int> Scheduler::domain() const {
  std::vector<int> states;
  for (int s = 0; s < state_count(); ++s) {
    if (has(s)) states.push_back(s);
  }
  return states;
}

MarkovChain MarkovChain::from_mdp(Mdp mdp) {
  for (int s = 0; s < mdp.state_count(); ++s) {
    if (mdp.enabled_count(s) != 1) {
      throw ValidationError(ValidationError::Code::NotAMarkovChain,
                            "state " + std::to_string(s) + " has " +
                                std::to_string(mdp.enabled_count(s)) + " enabled transitions");
    }
  }
  return MarkovChain(std::move(mdp));
}

Scheduler MarkovChain::unique_scheduler() const {
  Scheduler eta(state_count());
  for (int s = 0; s < state_count(); ++s) eta.set(s, mdp_.enabled_range(s).first);
  return eta;
}

MarkovChain induced_chain(const Mdp& mdp, const Scheduler& eta, const Scheduler& completion) {
  RawModel raw;
  raw.state_count = mdp.state_count();
  for (int s = 0; s < mdp.state_count(); ++s) {
    int chosen;
    if (eta.state_count() > s && eta.has(s)) {
      chosen = eta.at(s);
    } else if (completion.state_count() > s && completion.has(s)) {
      chosen = completion.at(s);
    } else {
      throw ValidationError(ValidationError::Code::IncompleteScheduler,
                            "no choice for state " + std::to_string(s));
    }
    auto [first, last] = mdp.enabled_range(s);
    if (chosen < first || chosen >= last) {
      throw ValidationError(ValidationError::Code::IncompleteScheduler,
                            "choice " + std::to_string(chosen) + " is not enabled in state " +
                                std::to_string(s));
    }
    const Transition& t = mdp.transition(chosen);
    raw.transitions.push_back({t.source, t.action, t.support});
  }
  return MarkovChain::from_mdp(validate_mdp(raw));
}

MarkovChain induced_chain(const Mdp& mdp, const Scheduler& total) {
  return induced_chain(mdp, total, Scheduler(mdp.state_count()));
}

Rational path_probability(const Mdp& mdp, const Scheduler& eta, int start, const FinitePath& path) {
  int current = path.start;
  Rational product(1);
  bool in_paths = path.start == start;
  for (const PathStep& step : path.steps) {
    auto [first, last] = mdp.enabled_range(current);
    if (step.transition < first || step.transition >= last) {
      throw ValidationError(ValidationError::Code::MalformedPath,
                            "transition " + std::to_string(step.transition) +
                                " is not enabled in state " + std::to_string(current));
    }
    Rational p = mdp.transition(step.transition).probability(step.state);
    if (p.is_zero()) {
      throw ValidationError(ValidationError::Code::MalformedPath,
                            "step to state " + std::to_string(step.state) +
                                " has zero probability");
    }
    if (eta.state_count() <= current || !eta.has(current) || eta.at(current) != step.transition) {
      in_paths = false;
    }
    product *= p;
    current = step.state;
  }
  return in_paths ? product : Rational(0);
}

}  // namespace exactreach
