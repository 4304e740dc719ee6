#include <benchmark/benchmark.h>

#include <affect/bifurcation.hpp>
#include <affect/dde.hpp>

namespace {

void BM_IntegrateReduced(benchmark::State& state) {
  const auto h = affect::hopf_point(4.0, 3.75, 1.0);
  const affect::ReducedParams params{4.0, 3.75, 1.0, 1.05 * h->t0};
  const double p_plus = affect::fixed_points(4.0, 3.75).p_plus->p;
  const double t_end = double(state.range(0));
  for (auto _ : state) {
    auto run = affect::integrate_reduced(params, p_plus + 1e-3, t_end, params.t0 / 40, 16);
    benchmark::DoNotOptimize(run.trajectory.size());
  }
  state.SetItemsProcessed(state.iterations() * std::int64_t(t_end / (params.t0 / 40)));
}
BENCHMARK(BM_IntegrateReduced)->Arg(1000)->Arg(10000);

void BM_IntegrateFullScenario(benchmark::State& state) {
  const affect::FullModelParams params;
  const double eb = affect::equilibrium_eb_values(params).front();
  const double total = affect::equilibrium_total_affect(eb, params);
  const auto schedule = affect::StressScenario{}.schedule();
  for (auto _ : state) {
    auto run = affect::integrate_full(params, {total * eb, total * (1 - eb)}, 3650, 0.1, schedule, 10);
    benchmark::DoNotOptimize(run.trajectory.size());
  }
}
BENCHMARK(BM_IntegrateFullScenario)->Unit(benchmark::kMillisecond);

}  // namespace
