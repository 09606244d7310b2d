#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "prsim/analytics.hpp"
#include "prsim/dynamics.hpp"

using namespace prsim;

namespace {

GameParams params(double epsilon, double delta, double mu) {
  GameParams p;
  p.epsilon = epsilon;
  p.delta = delta;
  p.mu = mu;
  p.ebar = 0.45;
  return p;
}

Counts6 uniform_counts(int per) { return {per, per, per, per, per, per}; }

}  // namespace

TEST_CASE("initial state assigns 300 agents per strategy per role") {
  const PopulationState s = initial_state();
  CHECK(s.round == 0);
  CHECK(s.author_strategies.size() == 1800);
  CHECK(s.reviewer_strategies.size() == 1800);
  CHECK(strategy_counts(s.author_strategies) == uniform_counts(300));
  CHECK(strategy_counts(s.reviewer_strategies) == uniform_counts(300));

  const PopulationState tiny = initial_state(6);
  CHECK(strategy_counts(tiny.author_strategies) == uniform_counts(1));

  CHECK_THROWS_AS(initial_state(10), std::invalid_argument);
  CHECK_THROWS_AS(initial_state(0), std::invalid_argument);
}

TEST_CASE("strategy average payoffs") {
  SUBCASE("uniform mode, top effort accepted everywhere") {
    const BimatrixGame g = build_game(params(0.4, 0.0, 0.0));
    const Vec6 avg = strategy_avg_payoffs(g, Role::author, uniform_counts(300),
                                          PayoffAveraging::uniform_over_types);
    CHECK(avg[5] == doctest::Approx(1.26).epsilon(1e-12));
  }

  SUBCASE("reviewer facing only rejected papers earns the base payoff") {
    StrategySpace space;
    space.efforts = {0.01, 0.02, 0.03, 0.04, 0.05, 0.06};
    space.thresholds = {0.5, 0.6, 0.7, 0.8, 0.85, 0.9};
    const BimatrixGame g = build_game(params(0.3, 0.3, 1.6), space);
    const Vec6 avg = strategy_avg_payoffs(g, Role::reviewer, uniform_counts(300),
                                          PayoffAveraging::uniform_over_types);
    for (double v : avg) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
  }

  SUBCASE("equal opponent counts match uniform mode") {
    const BimatrixGame g = build_game(params(0.3, 0.2, 0.8));
    for (Role role : {Role::author, Role::reviewer}) {
      const Vec6 weighted = strategy_avg_payoffs(g, role, uniform_counts(300),
                                                 PayoffAveraging::population_weighted);
      const Vec6 uniform = strategy_avg_payoffs(g, role, uniform_counts(300),
                                                PayoffAveraging::uniform_over_types);
      for (int k = 0; k < kNumStrategies; ++k) {
        CHECK(weighted[k] == doctest::Approx(uniform[k]).epsilon(1e-15));
      }
    }
  }

  SUBCASE("population weighting equals the explicit per-opponent average") {
    const BimatrixGame g = build_game(params(0.1, 0.3, 0.4));
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
      // random opponent population of 1800 agents
      std::vector<std::uint8_t> opponents(1800);
      for (auto& s : opponents) s = static_cast<std::uint8_t>(rng.next_below(6));
      const Counts6 counts = strategy_counts(opponents);

      for (Role role : {Role::author, Role::reviewer}) {
        const Vec6 fast =
            strategy_avg_payoffs(g, role, counts, PayoffAveraging::population_weighted);
        for (int k = 0; k < kNumStrategies; ++k) {
          double sum = 0.0;
          for (std::uint8_t opp : opponents) {
            sum += role == Role::author ? g.author[k][opp] : g.reviewer[opp][k];
          }
          CHECK(fast[k] == doctest::Approx(sum / 1800.0).epsilon(1e-12));
        }
      }
    }
  }

  SUBCASE("author payoffs ignore delta under double blind") {
    Vec6 reference{};
    bool first = true;
    for (double delta : {0.0, 0.1, 0.2, 0.3}) {
      const BimatrixGame g = build_game(params(0.2, delta, 0.0));
      const Vec6 avg = strategy_avg_payoffs(g, Role::author, uniform_counts(300),
                                            PayoffAveraging::uniform_over_types);
      if (first) {
        reference = avg;
        first = false;
      } else {
        CHECK(avg == reference);
      }
    }
  }

  SUBCASE("zero opponent total is rejected") {
    const BimatrixGame g = build_game(params(0.2, 0.0, 0.0));
    CHECK_THROWS_AS(strategy_avg_payoffs(g, Role::author, Counts6{},
                                         PayoffAveraging::population_weighted),
                    std::invalid_argument);
  }
}

TEST_CASE("logit choice probabilities") {
  SUBCASE("single-strategy record is degenerate") {
    CandidateRecord record;
    for (int h = 0; h < 31; ++h) record.rows.push_back({2, 1.3});
    const Vec6 p = logit_probabilities(record, 0.044);
    CHECK(p[2] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p[0] == 0.0);
  }

  SUBCASE("equal payoffs make probabilities count-proportional") {
    CandidateRecord record;
    for (int h = 0; h < 30; ++h) record.rows.push_back({1, 0.7});
    record.rows.push_back({4, 0.7});
    const Vec6 p = logit_probabilities(record, 0.044);
    CHECK(p[1] == doctest::Approx(30.0 / 31.0).epsilon(1e-12));
    CHECK(p[4] == doctest::Approx(1.0 / 31.0).epsilon(1e-12));
  }

  SUBCASE("one eta of payoff advantage is one factor of e") {
    CandidateRecord record;
    record.rows.push_back({0, 1.0});
    record.rows.push_back({1, 1.044});
    const Vec6 p = logit_probabilities(record, 0.044);
    CHECK(p[1] == doctest::Approx(0.7310585786300049).epsilon(1e-12));
    CHECK(p[1] / p[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-9));
  }

  SUBCASE("huge eta approaches payoff-blind frequency imitation") {
    Counts6 counts{3, 0, 10, 0, 17, 1};
    Vec6 payoffs{5.0, 0.0, -3.0, 0.0, 8.0, 1.0};
    const Vec6 p = logit_probabilities_from_counts(counts, payoffs, 1e9);
    for (int k = 0; k < kNumStrategies; ++k) {
      CHECK(p[k] == doctest::Approx(counts[k] / 31.0).epsilon(1e-6));
    }
  }

  SUBCASE("normalization holds for payoff magnitudes up to 100") {
    Rng rng(1234);
    for (int trial = 0; trial < 500; ++trial) {
      CandidateRecord record;
      Counts6 counts{};
      Vec6 payoffs{};
      for (int k = 0; k < kNumStrategies; ++k) payoffs[k] = rng.next_unit() * 200.0 - 100.0;
      for (int h = 0; h < 31; ++h) {
        const int s = static_cast<int>(rng.next_below(6));
        record.rows.push_back({s, payoffs[s]});
        ++counts[s];
      }
      for (const Vec6& p : {logit_probabilities(record, 0.044),
                            logit_probabilities_from_counts(counts, payoffs, 0.044)}) {
        double sum = 0.0;
        for (double v : p) {
          CHECK(std::isfinite(v));
          CHECK(v >= 0.0);
          sum += v;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
      }
    }
  }

  SUBCASE("row and count forms agree when rows are homogeneous per strategy") {
    Rng rng(555);
    for (int trial = 0; trial < 200; ++trial) {
      Counts6 counts{};
      Vec6 payoffs{};
      for (int k = 0; k < kNumStrategies; ++k) payoffs[k] = rng.next_unit() * 4.0 - 1.0;
      CandidateRecord record;
      for (int h = 0; h < 31; ++h) {
        const int s = static_cast<int>(rng.next_below(6));
        record.rows.push_back({s, payoffs[s]});
        ++counts[s];
      }
      const Vec6 a = logit_probabilities(record, 0.044);
      const Vec6 b = logit_probabilities_from_counts(counts, payoffs, 0.044);
      for (int k = 0; k < kNumStrategies; ++k) {
        CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-12));
      }
    }
  }

  SUBCASE("contract violations") {
    CHECK_THROWS_AS(logit_probabilities(CandidateRecord{}, 0.044), std::invalid_argument);
    CandidateRecord one;
    one.rows.push_back({0, 1.0});
    CHECK_THROWS_AS(logit_probabilities(one, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(logit_probabilities_from_counts(Counts6{}, Vec6{}, 0.044),
                    std::invalid_argument);
  }
}

TEST_CASE("revise_agent") {
  const Vec6 flat_payoffs{1, 1, 1, 1, 1, 1};

  SUBCASE("forced mutation is uniform over the six strategies") {
    RevisionConfig cfg;
    cfg.prob_mutation = 1.0;
    std::vector<std::uint8_t> pop(1800, 3);
    Rng rng(2024);
    std::array<long, 6> hits{};
    const int draws = 60000;
    for (int d = 0; d < draws; ++d) {
      ++hits[revise_agent(d % 1800, pop, flat_payoffs, cfg, rng)];
    }
    double chi2 = 0.0;
    const double expect = draws / 6.0;
    for (long h : hits) chi2 += (h - expect) * (h - expect) / expect;
    CHECK(chi2 < 20.515);  // chi-square df=5 at p=0.001
  }

  SUBCASE("homogeneous population without mutation is absorbing") {
    RevisionConfig cfg;
    cfg.prob_mutation = 0.0;
    std::vector<std::uint8_t> pop(1800, 4);
    Rng rng(7);
    Vec6 payoffs{9.0, 1.0, 5.0, 2.0, 0.5, 3.0};  // other strategies look better
    for (int d = 0; d < 2000; ++d) {
      CHECK(revise_agent(d % 1800, pop, payoffs, cfg, rng) == 4);
    }
  }

  SUBCASE("huge eta imitates candidate frequencies, not payoffs") {
    RevisionConfig cfg;
    cfg.prob_mutation = 0.0;
    cfg.eta = 1e9;
    std::vector<std::uint8_t> pop(1800);
    for (int i = 0; i < 1800; ++i) pop[i] = i < 900 ? 0 : 5;
    Vec6 payoffs{0.0, 0, 0, 0, 0, 100.0};  // strategy 5 vastly better
    Rng rng(31337);
    long to_top = 0;
    const int draws = 20000;
    for (int d = 0; d < draws; ++d) {
      if (revise_agent(d % 1800, pop, payoffs, cfg, rng) == 5) ++to_top;
    }
    const double share = static_cast<double>(to_top) / draws;
    CHECK(share == doctest::Approx(0.5).epsilon(0.05));
  }

  SUBCASE("population too small for the candidate record") {
    RevisionConfig cfg;  // n_candidates = 31
    std::vector<std::uint8_t> pop(20, 0);
    Rng rng(1);
    CHECK_THROWS_AS(revise_agent(0, pop, flat_payoffs, cfg, rng), std::invalid_argument);
  }
}

TEST_CASE("step_round") {
  const BimatrixGame g = build_game(params(0.3, 0.3, 1.6));

  SUBCASE("zero revision probability only advances the round") {
    RevisionConfig cfg;
    cfg.prob_revision = 0.0;
    const PopulationState s0 = initial_state();
    const PopulationState s1 = step_round(s0, g, cfg, 42);
    CHECK(s1.round == 1);
    CHECK(s1.author_strategies == s0.author_strategies);
    CHECK(s1.reviewer_strategies == s0.reviewer_strategies);
  }

  SUBCASE("deterministic given seed and config") {
    RevisionConfig cfg;
    PopulationState a = initial_state();
    PopulationState b = initial_state();
    for (int r = 0; r < 5; ++r) {
      a = step_round(a, g, cfg, 42);
      b = step_round(b, g, cfg, 42);
    }
    CHECK(a.author_strategies == b.author_strategies);
    CHECK(a.reviewer_strategies == b.reviewer_strategies);
    // a different seed diverges
    PopulationState c = initial_state();
    for (int r = 0; r < 5; ++r) c = step_round(c, g, cfg, 43);
    CHECK(c.author_strategies != a.author_strategies);
  }

  SUBCASE("counts are conserved at 1800 per role") {
    RevisionConfig cfg;
    PopulationState s = initial_state();
    for (int r = 0; r < 50; ++r) {
      s = step_round(s, g, cfg, 7);
      for (const Counts6& counts : {strategy_counts(s.author_strategies),
                                    strategy_counts(s.reviewer_strategies)}) {
        long total = 0;
        for (int c : counts) total += c;
        CHECK(total == 1800);
      }
    }
  }

  SUBCASE("homogeneous population is absorbing without mutation") {
    RevisionConfig cfg;
    cfg.prob_mutation = 0.0;
    PopulationState s = initial_state();
    std::fill(s.author_strategies.begin(), s.author_strategies.end(), 2);
    std::fill(s.reviewer_strategies.begin(), s.reviewer_strategies.end(), 1);
    const std::vector<std::uint8_t> authors = s.author_strategies;
    const std::vector<std::uint8_t> reviewers = s.reviewer_strategies;
    for (int r = 0; r < 50; ++r) s = step_round(s, g, cfg, 99);
    CHECK(s.author_strategies == authors);
    CHECK(s.reviewer_strategies == reviewers);
  }

  SUBCASE("about 219.6 agents per role revise each round") {
    // visible-change estimator: with prob_mutation = 1 every reviser draws a
    // uniform strategy, so changes undercount revisers by exactly 1/6
    RevisionConfig cfg;
    cfg.prob_mutation = 1.0;
    PopulationState s = initial_state();
    std::fill(s.author_strategies.begin(), s.author_strategies.end(), 0);
    double total_estimate = 0.0;
    const int rounds = 1000;
    for (int r = 0; r < rounds; ++r) {
      s.round = r;
      PopulationState next = step_round(s, g, cfg, 4242);
      long changed = 0;
      for (std::uint8_t v : next.author_strategies) {
        if (v != 0) ++changed;
      }
      total_estimate += static_cast<double>(changed) * 6.0 / 5.0;
    }
    const double mean = total_estimate / rounds;
    CHECK(mean == doctest::Approx(219.6).epsilon(5.0 / 219.6));
  }

  SUBCASE("sequential timing also conserves counts and stays deterministic") {
    RevisionConfig cfg;
    cfg.update_timing = UpdateTiming::sequential;
    PopulationState a = initial_state();
    PopulationState b = initial_state();
    for (int r = 0; r < 10; ++r) {
      a = step_round(a, g, cfg, 5);
      b = step_round(b, g, cfg, 5);
      long total = 0;
      for (int c : strategy_counts(a.author_strategies)) total += c;
      CHECK(total == 1800);
    }
    CHECK(a.author_strategies == b.author_strategies);
  }
}

TEST_CASE("run_simulation") {
  SUBCASE("zero rounds records only the initial state") {
    RunConfig cfg;
    cfg.rounds = 0;
    const SimulationSeries series = run_simulation(cfg);
    REQUIRE(series.size() == 1);
    CHECK(series[0].round == 0);
    CHECK(series[0].author_counts == uniform_counts(300));
  }

  SUBCASE("ten rounds yield eleven rows") {
    RunConfig cfg;
    cfg.rounds = 10;
    cfg.game = params(0.3, 0.3, 1.6);
    CHECK(run_simulation(cfg).size() == 11);
  }

  SUBCASE("record_every keeps round 0 and the final round") {
    RunConfig cfg;
    cfg.rounds = 10;
    cfg.record_every = 3;
    const SimulationSeries series = run_simulation(cfg);
    REQUIRE(series.size() == 5);
    CHECK(series[0].round == 0);
    CHECK(series[1].round == 3);
    CHECK(series[4].round == 10);
  }

  SUBCASE("same seed reproduces the series, different seed does not") {
    RunConfig cfg;
    cfg.rounds = 60;
    cfg.game = params(0.1, 0.3, 0.0);
    cfg.seed = 12345;
    const SimulationSeries a = run_simulation(cfg);
    const SimulationSeries b = run_simulation(cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].round == b[i].round);
      CHECK(a[i].author_counts == b[i].author_counts);
      CHECK(a[i].reviewer_counts == b[i].reviewer_counts);
    }
    cfg.seed = 54321;
    const SimulationSeries c = run_simulation(cfg);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].author_counts != c[i].author_counts) any_diff = true;
    }
    CHECK(any_diff);
  }

  SUBCASE("invalid configs are rejected") {
    RunConfig cfg;
    cfg.rounds = -1;
    CHECK_THROWS_AS(run_simulation(cfg), std::invalid_argument);
    cfg = RunConfig{};
    cfg.population_size = 100;  // not divisible by 6
    CHECK_THROWS_AS(run_simulation(cfg), std::invalid_argument);
    cfg = RunConfig{};
    cfg.revision.eta = 0.0;
    CHECK_THROWS_AS(run_simulation(cfg), std::invalid_argument);
  }
}
