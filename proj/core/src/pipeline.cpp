#include "exactreach/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "exactreach/errors.hpp"

namespace exactreach {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Exact: return "exact";
    case RunStatus::SchedulerNotApt: return "scheduler-not-apt";
    case RunStatus::Error: return "error";
  }
  return "error";
}

std::string to_string(Objective objective) {
  return objective == Objective::Max ? "max" : "min";
}

ExactResult run_reachability(const Mdp& mdp, const StateSet& target, const RunOptions& options) {
  ExactResult result;
  result.objective = options.objective;
  const auto t_total = Clock::now();

  MaybeAnalysis analysis = maybe_states(mdp, target, options.objective);

  // Nothing to solve: every value is 0 or 1.
  if (analysis.maybe_count() == 0) {
    result.status = RunStatus::Exact;
    result.values.assign(mdp.state_count(), Rational(0));
    for (int s = 0; s < mdp.state_count(); ++s) {
      if (target[s]) result.values[s] = Rational(1);
    }
    result.scheduler_optimal = true;
    result.timings.total_s = seconds_since(t_total);
    return result;
  }

  // Candidate scheduler from value iteration (or the forced testing hook).
  ValueIterationOptions vi_options;
  vi_options.epsilon = options.epsilon;
  vi_options.tie_break = options.tie_break;
  Scheduler candidate;
  {
    const auto t_vi = Clock::now();
    if (options.forced_scheduler) {
      candidate = *options.forced_scheduler;
    } else {
      result.approx = value_iterate(mdp, analysis, vi_options);
      candidate = result.approx.scheduler;
      result.vi_iterations = result.approx.iterations;
    }
    result.timings.value_iteration_s = seconds_since(t_vi);
  }
  result.scheduler = candidate;

  // LP and start basis; basis construction is part of LP construction time.
  const auto t_lp = Clock::now();
  LpProblem problem = build_lp(mdp, analysis);
  result.lp_rows = problem.rows;
  result.lp_state_columns = problem.state_columns;
  Basis start = options.start_basis == StartBasis::Default
                    ? default_basis(problem)
                    : basis_from_scheduler(problem, candidate);
  result.start_basis = start;
  result.timings.lp_construction_s = seconds_since(t_lp);

  const long limit =
      options.iteration_limit > 0 ? options.iteration_limit : default_iteration_limit(problem);

  const auto t_simplex = Clock::now();
  SimplexOutcome outcome = options.variant == SimplexVariant::Dual
                               ? dual_simplex(problem, start, limit)
                               : primal_simplex(problem, start, limit);

  if (outcome.status == SimplexStatus::SingularBasis && options.repair_apt &&
      options.start_basis == StartBasis::Scheduler &&
      options.objective == Objective::Max) {
    // One-shot repair: re-run value iteration with distance tie-breaking
    // forced on and retry from the fresh scheduler basis.
    vi_options.tie_break = TieBreak::DistanceToTarget;
    result.approx = value_iterate(mdp, analysis, vi_options);
    candidate = result.approx.scheduler;
    result.vi_iterations = result.approx.iterations;
    result.scheduler = candidate;
    start = basis_from_scheduler(problem, candidate);
    result.start_basis = start;
    outcome = options.variant == SimplexVariant::Dual ? dual_simplex(problem, start, limit)
                                                      : primal_simplex(problem, start, limit);
  }
  result.timings.simplex_s = seconds_since(t_simplex);

  switch (outcome.status) {
    case SimplexStatus::SingularBasis:
      if (options.objective == Objective::Max) {
        result.status = RunStatus::SchedulerNotApt;
        result.message = "the scheduler basis is singular: the candidate scheduler is not apt";
      } else {
        result.status = RunStatus::Error;
        result.message = "internal error: singular basis under the min objective";
      }
      break;
    case SimplexStatus::IterationLimit:
      result.status = RunStatus::Error;
      result.message = "simplex iteration limit (" + std::to_string(limit) + ") exceeded";
      result.pivots = outcome.pivots;
      break;
    case SimplexStatus::Optimal: {
      result.status = RunStatus::Exact;
      result.pivots = outcome.pivots;
      result.scheduler_optimal = outcome.pivots == 0;
      result.final_basis = outcome.basis;
      result.values.assign(mdp.state_count(), Rational(0));
      for (int s = 0; s < mdp.state_count(); ++s) {
        if (target[s]) result.values[s] = Rational(1);
      }
      for (int j = 0; j < problem.state_columns; ++j) {
        result.values[problem.column_identity[j].id] = outcome.solution[j];
      }
      if (options.collect_pivot_log) result.pivot_log = pivot_log_lines(problem, outcome);
      break;
    }
  }
  result.timings.total_s = seconds_since(t_total);
  return result;
}

std::string to_json(const ExactResult& result, bool include_timings) {
  nlohmann::ordered_json j;
  j["status"] = to_string(result.status);
  j["objective"] = to_string(result.objective);
  nlohmann::ordered_json values = nlohmann::ordered_json::array();
  for (std::size_t s = 0; s < result.values.size(); ++s) {
    nlohmann::ordered_json entry;
    entry["state"] = s;
    entry["num"] = result.values[s].num_string();
    entry["den"] = result.values[s].den_string();
    entry["approx"] = result.values[s].to_double();
    values.push_back(std::move(entry));
  }
  j["values"] = std::move(values);
  j["pivots"] = result.pivots;
  j["scheduler_optimal"] = result.scheduler_optimal;
  if (include_timings) {
    nlohmann::ordered_json t;
    t["value_iteration_s"] = result.timings.value_iteration_s;
    t["lp_construction_s"] = result.timings.lp_construction_s;
    t["simplex_s"] = result.timings.simplex_s;
    t["total_s"] = result.timings.total_s;
    j["timings"] = std::move(t);
  }
  if (!result.message.empty()) j["message"] = result.message;
  return j.dump();
}

std::string to_text(const ExactResult& result) {
  std::ostringstream os;
  os << "status: " << to_string(result.status) << "\n";
  os << "objective: " << to_string(result.objective) << "\n";
  if (!result.message.empty()) os << "message: " << result.message << "\n";
  if (result.status == RunStatus::Exact) {
    os << "pivots: " << result.pivots << "\n";
    os << "scheduler_optimal: " << (result.scheduler_optimal ? "true" : "false") << "\n";
    for (std::size_t s = 0; s < result.values.size(); ++s) {
      os << "s" << s << " = " << result.values[s].fraction_string() << " ("
         << result.values[s].decimal_string() << ")\n";
    }
  }
  char buffer[192];
  std::snprintf(buffer, sizeof buffer,
                "timings: value_iteration=%.6fs lp_construction=%.6fs simplex=%.6fs total=%.6fs",
                result.timings.value_iteration_s, result.timings.lp_construction_s,
                result.timings.simplex_s, result.timings.total_s);
  os << buffer << "\n";
  return os.str();
}

std::string bench_csv_header() {
  return "model,n,m,variant,start_basis,epsilon,pivots,"
         "value_iteration_s,lp_construction_s,simplex_s,total_s,status";
}

std::string benchmark_models(const std::vector<std::pair<std::string, const ParsedModel*>>& models,
                             const BenchOptions& options) {
  std::ostringstream csv;
  csv << bench_csv_header() << "\n";
  for (const auto& [name, model] : models) {
    for (double epsilon : options.epsilons) {
      for (SimplexVariant variant : {SimplexVariant::Dual, SimplexVariant::Primal}) {
        for (StartBasis basis : {StartBasis::Scheduler, StartBasis::Default}) {
          RunOptions run_options;
          run_options.objective = options.objective;
          run_options.epsilon = epsilon;
          run_options.variant = variant;
          run_options.start_basis = basis;
          run_options.iteration_limit = options.iteration_limit;

          std::string status;
          ExactResult result;
          try {
            auto it = model->labels.find(options.target_label);
            if (it == model->labels.end()) {
              throw Error("model has no label '" + options.target_label + "'");
            }
            StateSet target = make_state_set(model->mdp.state_count(), it->second);
            result = run_reachability(model->mdp, target, run_options);
            status = to_string(result.status);
          } catch (const std::exception& e) {
            status = std::string("error: ") + e.what();
          }

          char epsilon_text[32];
          std::snprintf(epsilon_text, sizeof epsilon_text, "%g", epsilon);
          char timing_text[160];
          std::snprintf(timing_text, sizeof timing_text, "%.6f,%.6f,%.6f,%.6f",
                        result.timings.value_iteration_s, result.timings.lp_construction_s,
                        result.timings.simplex_s, result.timings.total_s);
          csv << name << "," << result.lp_state_columns << "," << result.lp_rows << ","
              << (variant == SimplexVariant::Dual ? "dual" : "primal") << ","
              << (basis == StartBasis::Scheduler ? "scheduler" : "default") << ","
              << epsilon_text << "," << result.pivots << "," << timing_text << "," << status
              << "\n";
        }
      }
    }
  }
  return csv.str();
}

}  // namespace exactreach
