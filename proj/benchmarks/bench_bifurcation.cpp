#include <benchmark/benchmark.h>

#include <affect/bifurcation.hpp>

namespace {

void BM_HopfPoint(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(affect::hopf_point(6.0, 8.0, 1.5, 1));
}
BENCHMARK(BM_HopfPoint);

void BM_LyapunovG1(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(affect::lyapunov_g1(4.0, 3.75));
}
BENCHMARK(BM_LyapunovG1);

void BM_LyapunovGeneral(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(affect::lyapunov_general(6.0, 8.0, 2.0));
}
BENCHMARK(BM_LyapunovGeneral);

}  // namespace
