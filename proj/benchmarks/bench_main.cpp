#include <benchmark/benchmark.h>

#include "prsim/dynamics.hpp"
#include "prsim/nash.hpp"
#include "prsim/sweep.hpp"

namespace {

prsim::GameParams open_review_params() {
  prsim::GameParams p;
  p.epsilon = 0.3;
  p.delta = 0.3;
  p.mu = 1.6;
  return p;
}

void BM_BuildGame(benchmark::State& state) {
  const prsim::GameParams p = open_review_params();
  for (auto _ : state) {
    benchmark::DoNotOptimize(prsim::build_game(p));
  }
}
BENCHMARK(BM_BuildGame);

void BM_EnumeratePureNash(benchmark::State& state) {
  const prsim::BimatrixGame g = prsim::build_game(open_review_params());
  for (auto _ : state) {
    benchmark::DoNotOptimize(prsim::enumerate_pure_nash(g));
  }
}
BENCHMARK(BM_EnumeratePureNash);

void BM_StepRound(benchmark::State& state) {
  const prsim::BimatrixGame g = prsim::build_game(open_review_params());
  prsim::RevisionConfig rev;
  prsim::PopulationState s = prsim::initial_state();
  for (auto _ : state) {
    s = prsim::step_round(s, g, rev, 42);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(2 * s.author_strategies.size()));
}
BENCHMARK(BM_StepRound);

void BM_Simulate1000Rounds(benchmark::State& state) {
  prsim::RunConfig cfg;
  cfg.game = open_review_params();
  cfg.rounds = 1000;
  cfg.seed = 7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(prsim::run_simulation(cfg));
  }
}
BENCHMARK(BM_Simulate1000Rounds)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
