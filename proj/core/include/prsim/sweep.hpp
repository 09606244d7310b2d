#ifndef PRSIM_SWEEP_HPP
#define PRSIM_SWEEP_HPP

#include <string>
#include <vector>

#include "prsim/analytics.hpp"
#include "prsim/dynamics.hpp"
#include "prsim/nash.hpp"

namespace prsim {

struct SweepGrid {
  std::vector<double> epsilons{0.1, 0.2, 0.3, 0.4};
  std::vector<double> deltas{0.0, 0.1, 0.2, 0.3};
  std::vector<double> mus{0.0, 0.2, 0.4, 0.8, 1.6};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  RunConfig base{};  // rounds, alpha/beta/ebar, revision protocol

  void validate() const;
  std::size_t combination_count() const {
    return epsilons.size() * deltas.size() * mus.size();
  }
};

/// One simulated (combination, seed) cell. Failures are kept, not dropped.
struct RunOutcome {
  double epsilon = 0, delta = 0, mu = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::vector<RunSummary> summaries;  // role x window, 4 entries when ok
  double wall_ms = 0;
};

struct CombinationResult {
  double epsilon = 0, delta = 0, mu = 0;
  bool ok = false;
  std::string error;  // set when the game itself is invalid
  NashResult nash;
};

struct SweepResult {
  SweepGrid grid;
  std::vector<CombinationResult> combinations;  // epsilon-major grid order
  std::vector<RunOutcome> runs;                 // combination-major, then seed
  WindowSpec last_window{};                     // the last-k window used
};

/// Simulates every (epsilon, delta, mu, seed) cell with `parallelism` worker
/// threads and enumerates pure Nash equilibria per combination. Outputs are
/// keyed to the cell, never to scheduling, so any parallelism degree yields
/// identical results. Per-run failures are recorded in the outcome.
SweepResult run_sweep(const SweepGrid& grid, int parallelism);

double median(std::vector<double> values);  // empty input yields NaN

/// rows follow grid.deltas, columns grid.mus; cell = median expected level
/// over seeds, rounded to 3 decimals. Throws if epsilon is not in the grid.
std::vector<std::vector<double>> tabulate(const SweepResult& result, double epsilon,
                                          Role role, const WindowSpec& window);

}  // namespace prsim

#endif
