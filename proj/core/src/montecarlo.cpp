#include "affect/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "affect/errors.hpp"

namespace affect {

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

CellResult run_stress_cell(const FullModelParams& base, double beta, double j,
                           std::size_t beta_index, std::size_t j_index, std::size_t runs,
                           double stress_duration, std::uint64_t master_seed,
                           const StressGridOptions& options) {
  if (runs == 0) throw ValidationError("runs_per_cell must be >= 1");
  if (!(j >= 1)) throw ValidationError("j values must be >= 1");
  FullModelParams prm = base;
  prm.beta = beta;
  prm.validate();
  const auto roots = equilibrium_eb_values(prm);
  if (roots.size() < 3) {
    throw ValidationError("beta=" + std::to_string(beta) + " is not bistable (" +
                          std::to_string(roots.size()) + " equilibria)");
  }
  StressScenario sc = options.scenario;
  sc.stress_duration = stress_duration;
  sc.stress_multiplier = j;
  const InterventionSchedule schedule = sc.schedule();
  const std::size_t record_every =
      std::max<std::size_t>(1, static_cast<std::size_t>(1.0 / options.dt + 0.5));

  CellResult out;
  out.beta = beta;
  out.j = j;
  out.runs = runs;
  for (std::size_t r = 0; r < runs; ++r) {
    const std::uint64_t seed = derive_seed(master_seed, beta_index, j_index, r);
    std::mt19937_64 rng(splitmix64(seed ^ 0x5bd1e995ULL));
    std::uniform_real_distribution<double> u(0.2, roots[roots.size() / 2]);
    const double eb0 = u(rng);
    const double total = equilibrium_total_affect(eb0, prm);
    const AffectState init{total * eb0, total * (1 - eb0)};
    JumpOptions jo;
    jo.record_every = record_every;
    const auto run = simulate_jump(prm, init, sc.horizon, options.dt, schedule, seed, jo);
    switch (basin_classify(run.trajectory, roots, sc.final_window)) {
      case Basin::kHigh: ++out.high; break;
      case Basin::kLow: ++out.low; break;
      case Basin::kUndecided: ++out.undecided; break;
    }
  }
  return out;
}

MonteCarloResult run_stress_grid(const FullModelParams& base,
                                 const std::vector<double>& beta_values,
                                 const std::vector<double>& j_values,
                                 std::size_t runs_per_cell, double stress_duration,
                                 std::uint64_t master_seed, const StressGridOptions& options) {
  if (beta_values.empty() || j_values.empty()) throw ValidationError("grid must be nonempty");
  MonteCarloResult res;
  res.betas = beta_values;
  res.js = j_values;
  res.runs_per_cell = runs_per_cell;
  res.seed = master_seed;
  res.cells.resize(beta_values.size() * j_values.size());
  parallel_for(res.cells.size(), options.threads, [&](std::size_t idx) {
    const std::size_t bi = idx / j_values.size();
    const std::size_t ji = idx % j_values.size();
    res.cells[idx] = run_stress_cell(base, beta_values[bi], j_values[ji], bi, ji,
                                     runs_per_cell, stress_duration, master_seed, options);
  });
  return res;
}

}  // namespace affect
