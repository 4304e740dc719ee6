#include <benchmark/benchmark.h>

#include <affect/montecarlo.hpp>
#include <affect/stochastic.hpp>

namespace {

void BM_SimulateJumpScenario(benchmark::State& state) {
  const affect::FullModelParams params;
  const double eb = affect::equilibrium_eb_values(params).front();
  const double total = affect::equilibrium_total_affect(eb, params);
  const auto schedule = affect::StressScenario{}.schedule();
  affect::JumpOptions opts;
  opts.jump_scale = double(state.range(0));
  opts.record_every = 10;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto run = affect::simulate_jump(params, {total * eb, total * (1 - eb)}, 3650, 0.1, schedule,
                                     seed++, opts);
    benchmark::DoNotOptimize(run.jumps_applied);
  }
}
BENCHMARK(BM_SimulateJumpScenario)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_StressCell(benchmark::State& state) {
  affect::StressGridOptions opts;
  opts.threads = 1;
  for (auto _ : state) {
    auto cell = affect::run_stress_cell(affect::FullModelParams{}, 2.6, 3.0, 0, 0, 10, 14.0, 2024, opts);
    benchmark::DoNotOptimize(cell.high);
  }
}
BENCHMARK(BM_StressCell)->Unit(benchmark::kMillisecond);

}  // namespace
