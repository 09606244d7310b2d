#ifndef PRSIM_DYNAMICS_HPP
#define PRSIM_DYNAMICS_HPP

#include <cstdint>
#include <vector>

#include "prsim/game.hpp"
#include "prsim/rng.hpp"

namespace prsim {

inline constexpr int kDefaultPopulation = 1800;

enum class Role { author, reviewer };

/// How a candidate's average payoff is computed. population_weighted plays
/// the strategy against the current opponent population (weights =
/// counts/total); uniform_over_types averages over the six opponent types
/// with equal weight.
enum class PayoffAveraging { population_weighted, uniform_over_types };

/// synchronous: every reviser observes the start-of-round population;
/// sequential: revisions are applied in agent order and later revisers
/// sample from the partially updated population.
enum class UpdateTiming { synchronous, sequential };

struct RevisionConfig {
  double prob_revision = 0.122;
  int n_candidates = 31;  // 30 sampled peers plus the reviser
  double eta = 0.044;
  double prob_mutation = 0.008;
  PayoffAveraging payoff_averaging = PayoffAveraging::population_weighted;
  UpdateTiming update_timing = UpdateTiming::synchronous;

  void validate(int population_size) const;
};

using Counts6 = std::array<int, kNumStrategies>;

/// Strategy assignment per agent, values 0..5 (matrix convention,
/// 0 = lowest level).
struct PopulationState {
  std::vector<std::uint8_t> author_strategies;
  std::vector<std::uint8_t> reviewer_strategies;
  std::int64_t round = 0;
};

/// Every strategy assigned to population/6 agents per role; round 0.
/// Throws if the population size is not divisible by the strategy count.
PopulationState initial_state(int population_size = kDefaultPopulation);

Counts6 strategy_counts(const std::vector<std::uint8_t>& strategies);

/// Entry k = average payoff of strategy k for `role` against the opponent
/// distribution. Throws on a zero-total opponent count vector in
/// population_weighted mode.
Vec6 strategy_avg_payoffs(const BimatrixGame& g, Role role,
                          const Counts6& opponent_counts, PayoffAveraging mode);

/// The n x 2 observation record a reviser compiles: one (strategy, average
/// payoff) row per candidate, the reviser's own strategy included.
struct CandidateRecord {
  struct Row {
    int strategy;  // 0..5
    double avg_payoff;
  };
  std::vector<Row> rows;
};

/// Logit choice over a candidate record: p(j) proportional to
/// sum_{rows with strategy j} exp(payoff / eta), computed with
/// max-subtraction. Entries sum to 1 within 1e-12.
Vec6 logit_probabilities(const CandidateRecord& record, double eta);

/// Same rule for the common case where every row of a given strategy
/// carries the same payoff, so the record reduces to per-strategy counts.
Vec6 logit_probabilities_from_counts(const Counts6& record_counts,
                                     const Vec6& avg_payoffs, double eta);

/// One revision: mutation with prob_mutation (uniform over the six
/// strategies), otherwise 30 distinct peers are sampled without replacement,
/// the record is formed with avg_payoffs, and the new strategy is drawn from
/// the logit probabilities. Throws if the population cannot supply
/// n_candidates - 1 distinct peers.
int revise_agent(int agent_index, const std::vector<std::uint8_t>& own_population,
                 const Vec6& avg_payoffs, const RevisionConfig& cfg, Rng& rng);

/// Advances one round: each agent of both roles draws an independent
/// Bernoulli(prob_revision) revision opportunity; average payoffs come from
/// the start-of-round opponent counts. Randomness is drawn from substreams
/// keyed on (run_seed, role, round), so the step is a pure function of its
/// arguments.
PopulationState step_round(const PopulationState& state, const BimatrixGame& g,
                           const RevisionConfig& cfg, std::uint64_t run_seed);

struct RunConfig {
  std::int64_t rounds = 13000;
  std::uint64_t seed = 1;
  int record_every = 1;
  int population_size = kDefaultPopulation;
  GameParams game{};
  StrategySpace space{};
  RevisionConfig revision{};

  void validate() const;
};

struct SeriesEntry {
  std::int64_t round;
  Counts6 author_counts;
  Counts6 reviewer_counts;
};

using SimulationSeries = std::vector<SeriesEntry>;

/// Runs cfg.rounds rounds and records the count vectors of both roles every
/// record_every rounds (round 0 and the final round are always recorded).
SimulationSeries run_simulation(const RunConfig& cfg);

}  // namespace prsim

#endif
