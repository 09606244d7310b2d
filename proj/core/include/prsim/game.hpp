#ifndef PRSIM_GAME_HPP
#define PRSIM_GAME_HPP

#include <array>

namespace prsim {

inline constexpr int kNumStrategies = 6;

using Vec6 = std::array<double, kNumStrategies>;
using Table6x6 = std::array<Vec6, kNumStrategies>;

/// Author effort levels and reviewer acceptance thresholds, both ascending.
/// Index 0 is the lowest level (the matrix convention used throughout the
/// core; figure-style highest-first labels are a reporting concern).
struct StrategySpace {
  Vec6 efforts{0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  Vec6 thresholds{0.2, 0.3, 0.4, 0.5, 0.6, 0.7};

  // Throws std::invalid_argument unless both lists are strictly increasing
  // and contained in (0,1).
  void validate() const;
};

/// Reference-level convention for the open-review bonuses.
/// `table` pins ebar to the mean of the six thresholds (0.45 on the default
/// grid), which is the value the published example matrices are consistent
/// with; `text` pins it to the mean of the six efforts (0.55).
enum class EbarMode { table, text };

double ebar_value(EbarMode mode, const StrategySpace& space);

struct GameParams {
  double alpha = 0.1;    // economy bonus weight on (1 - e)
  double beta = 0.1;     // effort cost weight
  double epsilon = 0.1;  // author reputation weight
  double delta = 0.0;    // reviewer ease bonus weight
  double mu = 0.0;       // open-review reputation weight; 0 = double blind
  double ebar = 0.45;    // reference level for the mu bonuses

  bool double_blind() const { return mu == 0.0; }
  void validate() const;  // all weights >= 0, ebar in (0,1)
};

/// d(e,t): accept iff e >= t. Ties accept. Comparison carries a tiny slack
/// so that grid values that arrive through parsing or arithmetic do not flip
/// the boundary on the last bit.
bool accept(double effort, double threshold);

/// Accepted: 1 + alpha(1-e) + eps*e - beta*e + mu*max(t - ebar, 0).
/// Rejected: -beta*e. The mu term vanishes under double blind.
double author_payoff(double effort, double threshold, const GameParams& p);

/// Accepted: 1 + delta(e-t) + mu*max(e - ebar, 0). Rejected: 1.
double reviewer_payoff(double effort, double threshold, const GameParams& p);

/// The 6x6 two-player game. Rows index author efforts ascending, columns
/// index reviewer thresholds ascending.
struct BimatrixGame {
  Table6x6 author{};
  Table6x6 reviewer{};
  GameParams params{};
  StrategySpace space{};
};

BimatrixGame build_game(const GameParams& params, const StrategySpace& space = {});

/// Display rounding used by the table emitters: 2 decimals, half away
/// from zero.
double round2(double x);
double round3(double x);

}  // namespace prsim

#endif
