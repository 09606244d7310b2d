#include "prsim/analytics.hpp"

#include <cmath>
#include <stdexcept>

namespace prsim {

std::string window_label(const WindowSpec& w) {
  if (w.kind == WindowKind::entire_history) return "entire";
  return "last:" + std::to_string(w.k);
}

WindowSpec parse_window_label(const std::string& s) {
  if (s == "entire") return WindowSpec::entire();
  if (s.rfind("last:", 0) == 0) {
    const long k = std::stol(s.substr(5));
    if (k <= 0) throw std::invalid_argument("window size must be positive: " + s);
    return WindowSpec::last(k);
  }
  throw std::invalid_argument("bad window label: " + s);
}

Vec6 reversed(const Vec6& v) {
  Vec6 out{};
  for (int i = 0; i < kNumStrategies; ++i) out[i] = v[kNumStrategies - 1 - i];
  return out;
}

DistributionStats window_distribution(const SimulationSeries& series, Role role,
                                      const WindowSpec& window) {
  const auto total = static_cast<std::int64_t>(series.size());
  std::int64_t begin = 0;
  if (window.kind == WindowKind::last_k) {
    if (window.k <= 0 || window.k > total) {
      throw std::invalid_argument("window does not fit the recorded series");
    }
    begin = total - window.k;
  }
  const std::int64_t n = total - begin;
  if (n <= 0) throw std::invalid_argument("empty window");

  Vec6 sum{};
  Vec6 sum_sq{};
  for (std::int64_t r = begin; r < total; ++r) {
    const Counts6& counts =
        role == Role::author ? series[r].author_counts : series[r].reviewer_counts;
    long pop = 0;
    for (int c : counts) pop += c;
    for (int k = 0; k < kNumStrategies; ++k) {
      const double f = static_cast<double>(counts[k]) / static_cast<double>(pop);
      sum[k] += f;
      sum_sq[k] += f * f;
    }
  }

  DistributionStats stats;
  stats.entries = n;
  for (int k = 0; k < kNumStrategies; ++k) {
    const double mean = sum[k] / static_cast<double>(n);
    stats.mean_fraction[k] = mean;
    const double var = std::max(sum_sq[k] / static_cast<double>(n) - mean * mean, 0.0);
    stats.std_fraction[k] = std::sqrt(var);  // population std, pinned
  }
  return stats;
}

namespace {
void check_distribution(const Vec6& p, double tol) {
  double sum = 0.0;
  for (double x : p) sum += x;
  if (std::abs(sum - 1.0) > tol) {
    throw std::invalid_argument("distribution does not sum to 1 within tolerance");
  }
}
}  // namespace

double expected_level(const Vec6& p, const Vec6& levels, double tol) {
  check_distribution(p, tol);
  double e = 0.0;
  for (int k = 0; k < kNumStrategies; ++k) e += levels[k] * p[k];
  return e;
}

double weighted_strategy_index(const Vec6& p_highest_first, double tol) {
  check_distribution(p_highest_first, tol);
  double s = 0.0;
  for (int k = 0; k < kNumStrategies; ++k) s += (k + 1) * p_highest_first[k];
  return s;
}

Vec6 fractions_from_percentages(const Vec6& pct) {
  Vec6 p{};
  for (int k = 0; k < kNumStrategies; ++k) p[k] = pct[k] / 100.0;
  return p;
}

RunSummary summarize(const SimulationSeries& series, Role role, const WindowSpec& window,
                     const StrategySpace& space, Labeling labeling) {
  const DistributionStats stats = window_distribution(series, role, window);
  const Vec6& levels = role == Role::author ? space.efforts : space.thresholds;

  RunSummary out;
  out.role = role;
  out.window = window;
  out.labeling = labeling;
  out.expected_level = expected_level(stats.mean_fraction, levels, 1e-6);
  out.s_bar = weighted_strategy_index(reversed(stats.mean_fraction), 1e-6);

  const Vec6 mean = labeling == Labeling::highest_first ? reversed(stats.mean_fraction)
                                                        : stats.mean_fraction;
  const Vec6 sd = labeling == Labeling::highest_first ? reversed(stats.std_fraction)
                                                      : stats.std_fraction;
  for (int k = 0; k < kNumStrategies; ++k) {
    out.mean_pct[k] = mean[k] * 100.0;
    out.std_pct[k] = sd[k] * 100.0;
  }
  return out;
}

}  // namespace prsim
