#include "prsim/nash.hpp"

#include <algorithm>
#include <stdexcept>

namespace prsim {

NashResult enumerate_pure_nash(const BimatrixGame& g, double tolerance) {
  if (tolerance < 0) throw std::invalid_argument("tolerance must be nonnegative");

  // Best achievable payoff per column for the author (row player) and per
  // row for the reviewer (column player).
  Vec6 col_max{};
  Vec6 row_max{};
  for (int j = 0; j < kNumStrategies; ++j) {
    double m = g.author[0][j];
    for (int i = 1; i < kNumStrategies; ++i) m = std::max(m, g.author[i][j]);
    col_max[j] = m;
  }
  for (int i = 0; i < kNumStrategies; ++i) {
    double m = g.reviewer[i][0];
    for (int j = 1; j < kNumStrategies; ++j) m = std::max(m, g.reviewer[i][j]);
    row_max[i] = m;
  }

  NashResult result;
  result.tolerance = tolerance;
  for (int i = 0; i < kNumStrategies; ++i) {
    for (int j = 0; j < kNumStrategies; ++j) {
      if (g.author[i][j] >= col_max[j] - tolerance &&
          g.reviewer[i][j] >= row_max[i] - tolerance) {
        result.equilibria.emplace_back(i, j);
      }
    }
  }
  result.count = static_cast<int>(result.equilibria.size());
  return result;
}

}  // namespace prsim
