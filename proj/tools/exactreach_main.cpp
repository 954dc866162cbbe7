#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "exactreach/errors.hpp"
#include "exactreach/pipeline.hpp"

namespace {

using namespace exactreach;

struct CheckArgs {
  std::string file;
  std::string objective;
  std::string target;
  double epsilon = 1e-6;
  std::string simplex = "dual";
  std::string start_basis = "scheduler";
  std::string format = "text";
  std::string tie_break = "distance";
  std::string dump_lp;
  bool pivot_log = false;
  bool repair_apt = false;
  bool no_timings = false;
};

int run_check(const CheckArgs& args) {
  ParsedModel model = parse_model_file(args.file);
  auto it = model.labels.find(args.target);
  if (it == model.labels.end()) {
    std::cerr << "error: model has no label '" << args.target << "'\n";
    return 1;
  }
  StateSet target = make_state_set(model.mdp.state_count(), it->second);

  RunOptions options;
  options.objective = args.objective == "min" ? Objective::Min : Objective::Max;
  options.epsilon = args.epsilon;
  options.variant = args.simplex == "primal" ? SimplexVariant::Primal : SimplexVariant::Dual;
  options.start_basis =
      args.start_basis == "default" ? StartBasis::Default : StartBasis::Scheduler;
  options.tie_break =
      args.tie_break == "index" ? TieBreak::TransitionIndex : TieBreak::DistanceToTarget;
  options.repair_apt = args.repair_apt;
  options.collect_pivot_log = args.pivot_log;

  if (!args.dump_lp.empty()) {
    MaybeAnalysis analysis = maybe_states(model.mdp, target, options.objective);
    std::ofstream lp_out(args.dump_lp);
    if (!lp_out) {
      std::cerr << "error: cannot write LP file '" << args.dump_lp << "'\n";
      return 1;
    }
    if (analysis.maybe_count() == 0) {
      lp_out << "\\ empty maybe set: no LP\n";
    } else {
      write_lp_text(build_lp(model.mdp, analysis), lp_out);
    }
  }

  ExactResult result = run_reachability(model.mdp, target, options);

  if (args.pivot_log) {
    for (const std::string& line : result.pivot_log) std::cerr << line << "\n";
  }
  if (args.format == "json") {
    std::cout << to_json(result, !args.no_timings) << "\n";
  } else {
    std::cout << to_text(result);
  }

  switch (result.status) {
    case RunStatus::Exact: return 0;
    case RunStatus::SchedulerNotApt: return 2;
    case RunStatus::Error: return 3;
  }
  return 3;
}

struct BenchArgs {
  std::string dir;
  std::string objective;
  std::string target;
  std::vector<double> epsilons;
  std::string csv;
};

int run_bench(const BenchArgs& args) {
  std::vector<std::pair<std::string, ParsedModel>> parsed;
  std::vector<std::string> files;
  for (const auto& entry : std::filesystem::directory_iterator(args.dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".mdp") {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  std::ostringstream parse_errors;
  for (const std::string& file : files) {
    try {
      parsed.emplace_back(std::filesystem::path(file).filename().string(),
                          parse_model_file(file));
    } catch (const std::exception& e) {
      parse_errors << std::filesystem::path(file).filename().string()
                   << ",,,,,,,,,,,error: " << e.what() << "\n";
    }
  }

  BenchOptions options;
  options.objective = args.objective == "min" ? Objective::Min : Objective::Max;
  options.target_label = args.target;
  if (!args.epsilons.empty()) options.epsilons = args.epsilons;

  std::vector<std::pair<std::string, const ParsedModel*>> views;
  views.reserve(parsed.size());
  for (const auto& [name, model] : parsed) views.emplace_back(name, &model);

  std::string csv = benchmark_models(views, options) + parse_errors.str();
  if (args.csv.empty() || args.csv == "-") {
    std::cout << csv;
  } else {
    std::ofstream out(args.csv);
    if (!out) {
      std::cerr << "error: cannot write CSV file '" << args.csv << "'\n";
      return 1;
    }
    out << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exactreach: exact max/min reachability probabilities for MDPs"};
  app.require_subcommand(1);

  CheckArgs check_args;
  CLI::App* check = app.add_subcommand("check", "solve one model exactly");
  check->add_option("file", check_args.file, "model file")->required()->check(CLI::ExistingFile);
  check->add_option("--objective", check_args.objective, "max or min")
      ->required()
      ->check(CLI::IsMember({"max", "min"}));
  check->add_option("--target", check_args.target, "target label")->required();
  check->add_option("--epsilon", check_args.epsilon, "value-iteration threshold")
      ->default_val(1e-6);
  check->add_option("--simplex", check_args.simplex, "simplex variant")
      ->default_val("dual")
      ->check(CLI::IsMember({"dual", "primal"}));
  check->add_option("--start-basis", check_args.start_basis, "warm-start basis")
      ->default_val("scheduler")
      ->check(CLI::IsMember({"scheduler", "default"}));
  check->add_option("--format", check_args.format, "output format")
      ->default_val("text")
      ->check(CLI::IsMember({"text", "json"}));
  check->add_option("--tie-break", check_args.tie_break,
                    "tie-breaking for the greedy scheduler")
      ->default_val("distance")
      ->check(CLI::IsMember({"distance", "index"}));
  check->add_option("--dump-lp", check_args.dump_lp, "write the LP in text form to this file");
  check->add_flag("--pivot-log", check_args.pivot_log, "print one line per pivot to stderr");
  check->add_flag("--repair-apt", check_args.repair_apt,
                  "on a non-apt scheduler, retry once with distance tie-breaking forced on");
  check->add_flag("--no-timings", check_args.no_timings, "omit timings from JSON output");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "sweep a directory of models into a CSV report");
  bench->add_option("dir", bench_args.dir, "directory with .mdp files")
      ->required()
      ->check(CLI::ExistingDirectory);
  bench->add_option("--objective", bench_args.objective, "max or min")
      ->required()
      ->check(CLI::IsMember({"max", "min"}));
  bench->add_option("--target", bench_args.target, "target label")->required();
  bench->add_option("--epsilon", bench_args.epsilons,
                    "value-iteration thresholds (repeatable)");
  bench->add_option("--csv", bench_args.csv, "output CSV path ('-' for stdout)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return run_check(check_args);
    if (bench->parsed()) return run_bench(bench_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
