#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "affect/model.hpp"
#include "affect/schedule.hpp"
#include "affect/stochastic.hpp"

namespace affect {

/// Calls fn(i) for i in [0, count) on up to `threads` workers (0 = hardware
/// concurrency). The first exception thrown by any call is rethrown.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

struct StressGridOptions {
  StressScenario scenario;  ///< stress_duration and stress_multiplier are overridden per cell
  double dt = 0.1;
  unsigned threads = 0;
};

struct CellResult {
  double beta = 0.0;
  double j = 0.0;
  std::size_t high = 0;
  std::size_t low = 0;
  std::size_t undecided = 0;
  std::size_t runs = 0;

  double fraction() const noexcept { return runs ? double(high) / double(runs) : 0.0; }
};

/// Fraction of runs ending in the high-EB basin over a (beta, j) grid.
struct MonteCarloResult {
  std::vector<double> betas;
  std::vector<double> js;
  std::vector<CellResult> cells;  ///< row-major: cells[bi * js.size() + ji]
  std::size_t runs_per_cell = 0;
  std::uint64_t seed = 0;

  const CellResult& cell(std::size_t bi, std::size_t ji) const {
    return cells.at(bi * js.size() + ji);
  }
};

/// One cell of the stress grid. Each run starts from EB0 ~ U(0.2, middle root)
/// with total affect at the delay-free fluid equilibrium for EB0, goes through
/// the therapy + stress scenario with negative-rate multiplier j, and is
/// classified on the final window. Run r uses derive_seed(master, bi, ji, r).
CellResult run_stress_cell(const FullModelParams& base, double beta, double j,
                           std::size_t beta_index, std::size_t j_index,
                           std::size_t runs, double stress_duration,
                           std::uint64_t master_seed, const StressGridOptions& options);

/// Runs every (beta, j) cell. Cells are independent and execute in parallel.
MonteCarloResult run_stress_grid(const FullModelParams& base,
                                 const std::vector<double>& beta_values,
                                 const std::vector<double>& j_values,
                                 std::size_t runs_per_cell, double stress_duration,
                                 std::uint64_t master_seed,
                                 const StressGridOptions& options = {});

}  // namespace affect
