#include "prsim/game.hpp"

#include <cmath>
#include <stdexcept>

namespace prsim {

namespace {
// Slack for the acceptance comparison. Grid levels are short decimals; any
// two distinct grid values differ by 0.1, so this cannot merge levels.
constexpr double kAcceptSlack = 1e-9;

void check_levels(const Vec6& v, const char* what) {
  for (int i = 0; i < kNumStrategies; ++i) {
    if (!(v[i] > 0.0 && v[i] < 1.0)) {
      throw std::invalid_argument(std::string(what) + " must lie in (0,1)");
    }
    if (i > 0 && !(v[i] > v[i - 1])) {
      throw std::invalid_argument(std::string(what) + " must be strictly increasing");
    }
  }
}
}  // namespace

void StrategySpace::validate() const {
  check_levels(efforts, "efforts");
  check_levels(thresholds, "thresholds");
}

double ebar_value(EbarMode mode, const StrategySpace& space) {
  const Vec6& v = (mode == EbarMode::table) ? space.thresholds : space.efforts;
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / kNumStrategies;
}

void GameParams::validate() const {
  if (alpha < 0 || beta < 0 || epsilon < 0 || delta < 0 || mu < 0) {
    throw std::invalid_argument("game weights must be nonnegative");
  }
  if (!(ebar > 0.0 && ebar < 1.0)) {
    throw std::invalid_argument("ebar must lie in (0,1)");
  }
}

bool accept(double effort, double threshold) {
  return effort >= threshold - kAcceptSlack;
}

double author_payoff(double effort, double threshold, const GameParams& p) {
  if (!accept(effort, threshold)) return -p.beta * effort;
  return 1.0 + p.alpha * (1.0 - effort) + p.epsilon * effort - p.beta * effort +
         p.mu * std::max(threshold - p.ebar, 0.0);
}

double reviewer_payoff(double effort, double threshold, const GameParams& p) {
  if (!accept(effort, threshold)) return 1.0;
  return 1.0 + p.delta * (effort - threshold) + p.mu * std::max(effort - p.ebar, 0.0);
}

BimatrixGame build_game(const GameParams& params, const StrategySpace& space) {
  params.validate();
  space.validate();
  BimatrixGame g;
  g.params = params;
  g.space = space;
  for (int i = 0; i < kNumStrategies; ++i) {
    for (int j = 0; j < kNumStrategies; ++j) {
      g.author[i][j] = author_payoff(space.efforts[i], space.thresholds[j], params);
      g.reviewer[i][j] = reviewer_payoff(space.efforts[i], space.thresholds[j], params);
    }
  }
  return g;
}

double round2(double x) { return std::round(x * 100.0) / 100.0; }
double round3(double x) { return std::round(x * 1000.0) / 1000.0; }

}  // namespace prsim
