#ifndef PRSIM_ANALYTICS_HPP
#define PRSIM_ANALYTICS_HPP

#include <string>

#include "prsim/dynamics.hpp"
#include "prsim/game.hpp"

namespace prsim {

enum class WindowKind { entire_history, last_k };

struct WindowSpec {
  WindowKind kind = WindowKind::entire_history;
  std::int64_t k = 3000;  // recorded entries, used by last_k

  static WindowSpec entire() { return {WindowKind::entire_history, 0}; }
  static WindowSpec last(std::int64_t k) { return {WindowKind::last_k, k}; }
};

std::string window_label(const WindowSpec& w);        // "entire" / "last:3000"
WindowSpec parse_window_label(const std::string& s);  // inverse of the above

/// Strategy index order of a reported 6-vector. lowest_first is the matrix
/// convention (index 0 = lowest level); highest_first is the figure
/// convention (index 0 = highest level).
enum class Labeling { lowest_first, highest_first };

Vec6 reversed(const Vec6& v);

struct DistributionStats {
  Vec6 mean_fraction{};  // lowest_first order
  Vec6 std_fraction{};   // population std of per-round fractions
  std::int64_t entries = 0;
};

/// Per-strategy mean and standard deviation of the per-round population
/// fractions over the window's recorded entries.
DistributionStats window_distribution(const SimulationSeries& series, Role role,
                                      const WindowSpec& window);

/// Dot product of a distribution with the matching level values.
/// p must sum to 1 within `tol`.
double expected_level(const Vec6& p, const Vec6& levels, double tol = 1e-9);

/// Weighted average strategy index, sum of i*p_i with i in 1..6 and p given
/// highest-first (figure convention).
double weighted_strategy_index(const Vec6& p_highest_first, double tol = 1e-9);

/// Converts a printed percentage row into a distribution by dividing by 100.
/// Published rows carry 2-dp rounding, so the result can sum ~1e-4 away from
/// 1; pass a matching tolerance to the statistics below when using them.
Vec6 fractions_from_percentages(const Vec6& pct);

struct RunSummary {
  Role role = Role::author;
  WindowSpec window{};
  Vec6 mean_pct{};  // ordered per `labeling`
  Vec6 std_pct{};
  double s_bar = 0.0;           // always highest-first index weighting
  double expected_level = 0.0;  // E over effort or threshold values
  Labeling labeling = Labeling::highest_first;
};

RunSummary summarize(const SimulationSeries& series, Role role, const WindowSpec& window,
                     const StrategySpace& space,
                     Labeling labeling = Labeling::highest_first);

}  // namespace prsim

#endif
