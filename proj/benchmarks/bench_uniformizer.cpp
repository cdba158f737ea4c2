#include <benchmark/benchmark.h>

#include "cli/day_scenario.hpp"
#include "ictmc/horizon.hpp"
#include "ictmc/stationary.hpp"
#include "ictmc/uniformizer.hpp"

namespace {

using namespace ictmc;

BirthDeathModel day_model(int servers, int queue) {
  return build_rates({0.2 * servers, 0.2, servers}, 0.97, 0.25,
                     static_cast<std::size_t>(servers + queue));
}

void BM_DtmcStep(benchmark::State& state) {
  const auto gen = build_generator(day_model(static_cast<int>(state.range(0)), 50));
  auto p = ProbabilityVector::point_mass(gen.states());
  for (auto _ : state) {
    p = dtmc_step(p, gen);
    benchmark::DoNotOptimize(p.p.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(gen.states()));
}
BENCHMARK(BM_DtmcStep)->Arg(100)->Arg(1000)->Arg(3000);

void BM_PoissonWindow(benchmark::State& state) {
  const double alpha_t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(poisson_window(alpha_t, 1e-7));
}
BENCHMARK(BM_PoissonWindow)->Arg(10)->Arg(1000)->Arg(1000000);

void BM_SolveStep(benchmark::State& state) {
  const auto model = day_model(100, 50);
  const auto gen = build_generator(model);
  const auto pi = stationary_distribution(model);
  const auto p0 = ProbabilityVector::point_mass(gen.states());
  const double threshold = state.range(0) != 0 ? 1e-3 : 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_step(p0, gen, 5.0, 1e-7, threshold, pi));
}
BENCHMARK(BM_SolveStep)->Arg(0)->Arg(1);

void BM_SolveHorizon150(benchmark::State& state) {
  cli::DayScenarioOptions o;
  o.detection = state.range(0) != 0;
  if (!o.detection) o.epsilon_total = 288 * o.epsilon_step;
  const auto config = cli::generate_day_scenario(o);
  const auto p0 = ProbabilityVector::point_mass(config.max_state() + 1);
  for (auto _ : state) benchmark::DoNotOptimize(solve_horizon(config, p0));
}
BENCHMARK(BM_SolveHorizon150)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
