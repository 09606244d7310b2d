#include "prsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace prsim {

void SweepGrid::validate() const {
  if (epsilons.empty() || deltas.empty() || mus.empty() || seeds.empty()) {
    throw std::invalid_argument("sweep grid lists must be non-empty");
  }
  base.validate();
}

namespace {

RunConfig cell_config(const SweepGrid& grid, double epsilon, double delta, double mu,
                      std::uint64_t seed) {
  RunConfig cfg = grid.base;
  cfg.game.epsilon = epsilon;
  cfg.game.delta = delta;
  cfg.game.mu = mu;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

SweepResult run_sweep(const SweepGrid& grid, int parallelism) {
  grid.validate();
  if (parallelism < 1) throw std::invalid_argument("parallelism must be positive");

  SweepResult result;
  result.grid = grid;

  // Recorded entries per run: round 0 plus every record_every-th round.
  const std::int64_t recorded =
      grid.base.rounds / grid.base.record_every + 1 +
      (grid.base.rounds % grid.base.record_every != 0 ? 1 : 0);
  result.last_window = WindowSpec::last(std::min<std::int64_t>(3000, recorded));

  struct Cell {
    double epsilon, delta, mu;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  cells.reserve(grid.combination_count() * grid.seeds.size());
  for (double e : grid.epsilons) {
    for (double d : grid.deltas) {
      for (double m : grid.mus) {
        CombinationResult combo;
        combo.epsilon = e;
        combo.delta = d;
        combo.mu = m;
        try {
          combo.nash = enumerate_pure_nash(
              build_game(cell_config(grid, e, d, m, 0).game, grid.base.space));
          combo.ok = true;
        } catch (const std::exception& ex) {
          combo.error = ex.what();
        }
        result.combinations.push_back(std::move(combo));
        for (std::uint64_t s : grid.seeds) cells.push_back({e, d, m, s});
      }
    }
  }

  result.runs.resize(cells.size());
  std::atomic<std::size_t> next{0};
  const WindowSpec last_window = result.last_window;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const Cell& cell = cells[i];
      RunOutcome& out = result.runs[i];
      out.epsilon = cell.epsilon;
      out.delta = cell.delta;
      out.mu = cell.mu;
      out.seed = cell.seed;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const RunConfig cfg = cell_config(grid, cell.epsilon, cell.delta, cell.mu, cell.seed);
        const SimulationSeries series = run_simulation(cfg);
        for (Role role : {Role::author, Role::reviewer}) {
          for (const WindowSpec& w : {WindowSpec::entire(), last_window}) {
            out.summaries.push_back(summarize(series, role, w, cfg.space));
          }
        }
        out.ok = true;
      } catch (const std::exception& ex) {
        out.ok = false;
        out.error = ex.what();
      }
      out.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    }
  };

  if (parallelism == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(parallelism);
    for (int t = 0; t < parallelism; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  return result;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<std::vector<double>> tabulate(const SweepResult& result, double epsilon,
                                          Role role, const WindowSpec& window) {
  const auto& grid = result.grid;
  if (std::find(grid.epsilons.begin(), grid.epsilons.end(), epsilon) ==
      grid.epsilons.end()) {
    throw std::invalid_argument("epsilon not in sweep grid");
  }

  std::vector<std::vector<double>> table(grid.deltas.size(),
                                         std::vector<double>(grid.mus.size()));
  for (std::size_t di = 0; di < grid.deltas.size(); ++di) {
    for (std::size_t mi = 0; mi < grid.mus.size(); ++mi) {
      std::vector<double> values;
      for (const RunOutcome& run : result.runs) {
        if (!run.ok || run.epsilon != epsilon || run.delta != grid.deltas[di] ||
            run.mu != grid.mus[mi]) {
          continue;
        }
        for (const RunSummary& s : run.summaries) {
          if (s.role == role && s.window.kind == window.kind &&
              (window.kind == WindowKind::entire_history || s.window.k == window.k)) {
            values.push_back(s.expected_level);
          }
        }
      }
      table[di][mi] = round3(median(std::move(values)));
    }
  }
  return table;
}

}  // namespace prsim
