#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <affect/segmentation.hpp>
#include <affect/spectral.hpp>

namespace {

affect::Trajectory weekly_series(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> noise(0.0, 0.01);
  std::vector<double> t(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = double(i);
    y[i] = 0.765 + 0.045 * std::sin(2 * std::numbers::pi * t[i] / 7) + noise(rng);
  }
  return affect::Trajectory::scalar(std::move(t), std::move(y));
}

void BM_LombScargle(benchmark::State& state) {
  const auto s = weekly_series(std::size_t(state.range(0)));
  const auto grid = affect::default_frequency_grid(s.times());
  for (auto _ : state) benchmark::DoNotOptimize(affect::lomb_scargle(s, grid).peak_omega());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LombScargle)->RangeMultiplier(2)->Range(32, 512)->Complexity(benchmark::oNSquared);

void BM_SlidingLombScargle(benchmark::State& state) {
  const auto s = weekly_series(200);
  const auto grid = affect::default_frequency_grid(s.times());
  for (auto _ : state)
    benchmark::DoNotOptimize(affect::sliding_lomb_scargle(s, 20.0, grid).powers.size());
}
BENCHMARK(BM_SlidingLombScargle);

void BM_SegmentVariance(benchmark::State& state) {
  const auto s = weekly_series(std::size_t(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(affect::segment_variance(s).split_index);
}
BENCHMARK(BM_SegmentVariance)->Arg(40)->Arg(400);

}  // namespace
