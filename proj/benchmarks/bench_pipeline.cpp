#include <benchmark/benchmark.h>

#include <random>

#include "exactreach/oracle.hpp"
#include "exactreach/pipeline.hpp"
#include "support/models.hpp"

using namespace exactreach;
using exactreach::testing::make_biased_walk;
using exactreach::testing::walk_goal;

namespace {

void BM_ValueIteration(benchmark::State& state) {
  const int length = static_cast<int>(state.range(0));
  Mdp walk = make_biased_walk(length);
  MaybeAnalysis analysis = maybe_states(walk, walk_goal(length), Objective::Max);
  for (auto _ : state) {
    ApproxResult result = value_iterate(walk, analysis);
    benchmark::DoNotOptimize(result.values);
  }
  state.SetComplexityN(length);
}
BENCHMARK(BM_ValueIteration)->Arg(25)->Arg(50)->Arg(100)->Complexity();

void BM_LpConstruction(benchmark::State& state) {
  const int length = static_cast<int>(state.range(0));
  Mdp walk = make_biased_walk(length);
  MaybeAnalysis analysis = maybe_states(walk, walk_goal(length), Objective::Max);
  for (auto _ : state) {
    LpProblem p = build_lp(walk, analysis);
    benchmark::DoNotOptimize(p.rows);
  }
}
BENCHMARK(BM_LpConstruction)->Arg(25)->Arg(50)->Arg(100);

// Warm start from the chain's unique scheduler: factorization plus the
// feasibility checks, zero pivots.
void BM_DualSimplexWarmStart(benchmark::State& state) {
  const int length = static_cast<int>(state.range(0));
  Mdp walk = make_biased_walk(length);
  MaybeAnalysis analysis = maybe_states(walk, walk_goal(length), Objective::Max);
  LpProblem p = build_lp(walk, analysis);
  Basis basis = basis_from_scheduler(p, MarkovChain::from_mdp(walk).unique_scheduler());
  for (auto _ : state) {
    SimplexOutcome out = dual_simplex(p, basis, default_iteration_limit(p));
    benchmark::DoNotOptimize(out.pivots);
  }
}
BENCHMARK(BM_DualSimplexWarmStart)->Arg(25)->Arg(50)->Arg(100);

// The baseline a warm start is compared against: the all-slack basis.
void BM_DualSimplexDefaultBasis(benchmark::State& state) {
  const int length = static_cast<int>(state.range(0));
  Mdp walk = make_biased_walk(length);
  MaybeAnalysis analysis = maybe_states(walk, walk_goal(length), Objective::Max);
  LpProblem p = build_lp(walk, analysis);
  Basis basis = default_basis(p);
  for (auto _ : state) {
    SimplexOutcome out = dual_simplex(p, basis, default_iteration_limit(p));
    benchmark::DoNotOptimize(out.pivots);
  }
}
BENCHMARK(BM_DualSimplexDefaultBasis)->Arg(25)->Arg(50);

void BM_ChainReachExact(benchmark::State& state) {
  const int length = static_cast<int>(state.range(0));
  MarkovChain chain = MarkovChain::from_mdp(make_biased_walk(length));
  StateSet goal = walk_goal(length);
  for (auto _ : state) {
    std::vector<Rational> v = chain_reach_exact(chain, goal);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_ChainReachExact)->Arg(25)->Arg(50)->Arg(100)->Arg(200);

void BM_FullPipeline(benchmark::State& state) {
  const int length = static_cast<int>(state.range(0));
  Mdp walk = make_biased_walk(length);
  StateSet goal = walk_goal(length);
  for (auto _ : state) {
    ExactResult result = run_reachability(walk, goal, RunOptions{});
    benchmark::DoNotOptimize(result.pivots);
  }
}
BENCHMARK(BM_FullPipeline)->Arg(25)->Arg(50)->Arg(100);

void BM_RandomModelPipeline(benchmark::State& state) {
  std::mt19937 rng(97);
  std::vector<std::pair<Mdp, StateSet>> instances;
  for (int i = 0; i < 32; ++i) {
    Mdp mdp = exactreach::testing::random_mdp(rng);
    StateSet target = exactreach::testing::random_target(rng, mdp.state_count());
    instances.emplace_back(std::move(mdp), std::move(target));
  }
  std::size_t next = 0;
  for (auto _ : state) {
    const auto& [mdp, target] = instances[next++ % instances.size()];
    ExactResult result = run_reachability(mdp, target, RunOptions{});
    benchmark::DoNotOptimize(result.pivots);
  }
}
BENCHMARK(BM_RandomModelPipeline);

}  // namespace

BENCHMARK_MAIN();
