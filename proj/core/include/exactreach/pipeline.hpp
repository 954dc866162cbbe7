#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exactreach/lp.hpp"
#include "exactreach/mdp.hpp"
#include "exactreach/model_format.hpp"
#include "exactreach/qualitative.hpp"
#include "exactreach/simplex.hpp"
#include "exactreach/value_iteration.hpp"

namespace exactreach {

enum class SimplexVariant { Dual, Primal };
enum class StartBasis { Scheduler, Default };

struct RunOptions {
  Objective objective = Objective::Max;
  double epsilon = 1e-6;
  SimplexVariant variant = SimplexVariant::Dual;
  StartBasis start_basis = StartBasis::Scheduler;
  TieBreak tie_break = TieBreak::DistanceToTarget;
  bool repair_apt = false;
  long iteration_limit = 0;  // 0: 10 * (n + m)
  bool collect_pivot_log = false;

  /// Testing hook: use this scheduler instead of the value-iteration one.
  std::optional<Scheduler> forced_scheduler;
};

struct PhaseTimings {
  double value_iteration_s = 0.0;
  double lp_construction_s = 0.0;
  double simplex_s = 0.0;
  double total_s = 0.0;
};

enum class RunStatus { Exact, SchedulerNotApt, Error };

std::string to_string(RunStatus status);
std::string to_string(Objective objective);

/// Everything the pipeline produced: exact per-state values (1 on targets,
/// 0 on zero states, the LP solution on maybe states), the candidate
/// scheduler and bases involved, pivot counts and phase timings.
struct ExactResult {
  RunStatus status = RunStatus::Error;
  Objective objective = Objective::Max;
  std::vector<Rational> values;  // per state; empty unless status == Exact
  long pivots = 0;
  bool scheduler_optimal = false;  // pivots == 0
  PhaseTimings timings;
  std::string message;  // failure detail when status != Exact

  // pipeline details, useful for reports and tests
  ApproxResult approx;
  Scheduler scheduler;
  Basis start_basis;
  Basis final_basis;
  std::vector<std::string> pivot_log;
  int lp_rows = 0;
  int lp_state_columns = 0;
  long vi_iterations = 0;
};

/**
 * The full pipeline: qualitative preprocessing, value iteration for a
 * candidate scheduler, LP construction, warm-start basis, exact simplex.
 * A singular scheduler basis under the Max objective reports
 * SchedulerNotApt (with an optional one-shot repair re-running value
 * iteration with distance tie-breaking forced on); under Min it is an
 * internal error. An empty maybe set short-circuits without building any LP.
 */
ExactResult run_reachability(const Mdp& mdp, const StateSet& target, const RunOptions& options);

/// Renders the result as JSON (stable field order; big integers as decimal
/// strings). `include_timings` = false omits the wall-clock fields so that
/// outputs of identical runs are byte-identical.
std::string to_json(const ExactResult& result, bool include_timings = true);

/// Human-readable rendering; exact values shown as "p/q (decimal)".
std::string to_text(const ExactResult& result);

struct BenchOptions {
  Objective objective = Objective::Max;
  std::string target_label = "goal";
  std::vector<double> epsilons = {1e-6};
  long iteration_limit = 0;
};

std::string bench_csv_header();

/**
 * Runs every model through the cartesian product of {dual, primal} x
 * {scheduler, default} x epsilons and returns one CSV row per run. Per-model
 * errors become rows with an error status; the sweep continues.
 */
std::string benchmark_models(const std::vector<std::pair<std::string, const ParsedModel*>>& models,
                             const BenchOptions& options);

}  // namespace exactreach
