#ifndef PRSIM_NASH_HPP
#define PRSIM_NASH_HPP

#include <utility>
#include <vector>

#include "prsim/game.hpp"

namespace prsim {

struct NashResult {
  std::vector<std::pair<int, int>> equilibria;  // (row, col), lexicographic
  int count = 0;
  double tolerance = 0.0;
};

/// Pure-strategy Nash cells of a 6x6 bimatrix game. A cell qualifies when
/// neither player can improve by more than `tolerance` through a unilateral
/// deviation; indifference therefore qualifies (weak best responses).
NashResult enumerate_pure_nash(const BimatrixGame& g, double tolerance = 1e-9);

}  // namespace prsim

#endif
