#include "prsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace prsim {

void RevisionConfig::validate(int population_size) const {
  if (prob_revision < 0.0 || prob_revision > 1.0) {
    throw std::invalid_argument("prob_revision must lie in [0,1]");
  }
  if (prob_mutation < 0.0 || prob_mutation > 1.0) {
    throw std::invalid_argument("prob_mutation must lie in [0,1]");
  }
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  if (n_candidates < 1 || n_candidates > population_size) {
    throw std::invalid_argument("n_candidates must lie in [1, population size]");
  }
}

PopulationState initial_state(int population_size) {
  if (population_size <= 0 || population_size % kNumStrategies != 0) {
    throw std::invalid_argument("population size must be a positive multiple of 6");
  }
  PopulationState state;
  state.round = 0;
  const int per_strategy = population_size / kNumStrategies;
  state.author_strategies.resize(population_size);
  state.reviewer_strategies.resize(population_size);
  for (int i = 0; i < population_size; ++i) {
    state.author_strategies[i] = static_cast<std::uint8_t>(i / per_strategy);
    state.reviewer_strategies[i] = static_cast<std::uint8_t>(i / per_strategy);
  }
  return state;
}

Counts6 strategy_counts(const std::vector<std::uint8_t>& strategies) {
  Counts6 counts{};
  for (std::uint8_t s : strategies) ++counts[s];
  return counts;
}

Vec6 strategy_avg_payoffs(const BimatrixGame& g, Role role,
                          const Counts6& opponent_counts, PayoffAveraging mode) {
  Vec6 weights{};
  if (mode == PayoffAveraging::uniform_over_types) {
    weights.fill(1.0 / kNumStrategies);
  } else {
    long total = 0;
    for (int c : opponent_counts) total += c;
    if (total <= 0) throw std::invalid_argument("opponent counts sum to zero");
    for (int k = 0; k < kNumStrategies; ++k) {
      weights[k] = static_cast<double>(opponent_counts[k]) / static_cast<double>(total);
    }
  }

  Vec6 avg{};
  for (int k = 0; k < kNumStrategies; ++k) {
    double sum = 0.0;
    if (role == Role::author) {
      for (int j = 0; j < kNumStrategies; ++j) sum += weights[j] * g.author[k][j];
    } else {
      for (int i = 0; i < kNumStrategies; ++i) sum += weights[i] * g.reviewer[i][k];
    }
    avg[k] = sum;
  }
  return avg;
}

Vec6 logit_probabilities(const CandidateRecord& record, double eta) {
  if (record.rows.empty()) throw std::invalid_argument("empty candidate record");
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");

  double max_payoff = -std::numeric_limits<double>::infinity();
  for (const auto& row : record.rows) max_payoff = std::max(max_payoff, row.avg_payoff);

  Vec6 weights{};
  double total = 0.0;
  for (const auto& row : record.rows) {
    const double w = std::exp((row.avg_payoff - max_payoff) / eta);
    weights[row.strategy] += w;
    total += w;
  }
  Vec6 probs{};
  for (int k = 0; k < kNumStrategies; ++k) probs[k] = weights[k] / total;
  return probs;
}

Vec6 logit_probabilities_from_counts(const Counts6& record_counts,
                                     const Vec6& avg_payoffs, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  double max_payoff = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (int k = 0; k < kNumStrategies; ++k) {
    if (record_counts[k] > 0) {
      any = true;
      max_payoff = std::max(max_payoff, avg_payoffs[k]);
    }
  }
  if (!any) throw std::invalid_argument("empty candidate record");

  Vec6 weights{};
  double total = 0.0;
  for (int k = 0; k < kNumStrategies; ++k) {
    if (record_counts[k] > 0) {
      weights[k] = record_counts[k] * std::exp((avg_payoffs[k] - max_payoff) / eta);
      total += weights[k];
    }
  }
  Vec6 probs{};
  for (int k = 0; k < kNumStrategies; ++k) probs[k] = weights[k] / total;
  return probs;
}

namespace {

int sample_categorical(const Vec6& probs, Rng& rng) {
  const double r = rng.next_unit();
  double cum = 0.0;
  for (int k = 0; k < kNumStrategies; ++k) {
    cum += probs[k];
    if (r < cum) return k;
  }
  // r landed in the roundoff tail; return the last strategy with mass.
  for (int k = kNumStrategies - 1; k >= 0; --k) {
    if (probs[k] > 0.0) return k;
  }
  return kNumStrategies - 1;
}

}  // namespace

int revise_agent(int agent_index, const std::vector<std::uint8_t>& own_population,
                 const Vec6& avg_payoffs, const RevisionConfig& cfg, Rng& rng) {
  const int pop = static_cast<int>(own_population.size());
  const int peers = cfg.n_candidates - 1;
  if (peers > pop - 1) {
    throw std::invalid_argument("population too small to sample n_candidates - 1 peers");
  }

  if (rng.bernoulli(cfg.prob_mutation)) {
    return static_cast<int>(rng.next_below(kNumStrategies));
  }

  // Sample `peers` distinct agents other than self, by rejection; collisions
  // are rare at 30 draws out of 1800.
  thread_local std::vector<std::uint32_t> picked;
  picked.clear();
  Counts6 record_counts{};
  record_counts[own_population[agent_index]] = 1;  // self row
  while (static_cast<int>(picked.size()) < peers) {
    const auto idx = static_cast<std::uint32_t>(rng.next_below(pop));
    if (static_cast<int>(idx) == agent_index) continue;
    if (std::find(picked.begin(), picked.end(), idx) != picked.end()) continue;
    picked.push_back(idx);
    ++record_counts[own_population[idx]];
  }

  const Vec6 probs = logit_probabilities_from_counts(record_counts, avg_payoffs, cfg.eta);
  return sample_categorical(probs, rng);
}

PopulationState step_round(const PopulationState& state, const BimatrixGame& g,
                           const RevisionConfig& cfg, std::uint64_t run_seed) {
  const Counts6 author_counts = strategy_counts(state.author_strategies);
  const Counts6 reviewer_counts = strategy_counts(state.reviewer_strategies);
  const Vec6 author_avg =
      strategy_avg_payoffs(g, Role::author, reviewer_counts, cfg.payoff_averaging);
  const Vec6 reviewer_avg =
      strategy_avg_payoffs(g, Role::reviewer, author_counts, cfg.payoff_averaging);

  PopulationState next = state;
  next.round = state.round + 1;

  const bool synchronous = cfg.update_timing == UpdateTiming::synchronous;
  for (int role_tag = 0; role_tag < 2; ++role_tag) {
    const Role role = role_tag == 0 ? Role::author : Role::reviewer;
    const Vec6& avg = role == Role::author ? author_avg : reviewer_avg;
    const std::vector<std::uint8_t>& start =
        role == Role::author ? state.author_strategies : state.reviewer_strategies;
    std::vector<std::uint8_t>& out =
        role == Role::author ? next.author_strategies : next.reviewer_strategies;
    const std::vector<std::uint8_t>& source = synchronous ? start : out;

    Rng rng(substream_seed(run_seed, role_tag, static_cast<std::uint64_t>(state.round)));
    const int pop = static_cast<int>(start.size());
    for (int i = 0; i < pop; ++i) {
      if (rng.bernoulli(cfg.prob_revision)) {
        out[i] = static_cast<std::uint8_t>(revise_agent(i, source, avg, cfg, rng));
      }
    }
  }
  return next;
}

void RunConfig::validate() const {
  if (rounds < 0) throw std::invalid_argument("rounds must be nonnegative");
  if (record_every < 1) throw std::invalid_argument("record_every must be positive");
  game.validate();
  space.validate();
  if (population_size <= 0 || population_size % kNumStrategies != 0) {
    throw std::invalid_argument("population size must be a positive multiple of 6");
  }
  revision.validate(population_size);
}

SimulationSeries run_simulation(const RunConfig& cfg) {
  cfg.validate();
  const BimatrixGame g = build_game(cfg.game, cfg.space);

  PopulationState state = initial_state(cfg.population_size);
  SimulationSeries series;
  series.reserve(static_cast<std::size_t>(cfg.rounds / cfg.record_every) + 2);
  series.push_back({0, strategy_counts(state.author_strategies),
                    strategy_counts(state.reviewer_strategies)});

  for (std::int64_t r = 1; r <= cfg.rounds; ++r) {
    state = step_round(state, g, cfg.revision, cfg.seed);
    if (r % cfg.record_every == 0 || r == cfg.rounds) {
      series.push_back({r, strategy_counts(state.author_strategies),
                        strategy_counts(state.reviewer_strategies)});
    }
  }
  return series;
}

}  // namespace prsim
