#ifndef PRSIM_REPORT_HPP
#define PRSIM_REPORT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prsim/config.hpp"
#include "prsim/sweep.hpp"

namespace prsim {

std::uint64_t fnv1a64(std::string_view s);
std::string hex64(std::uint64_t x);

/// Writes through a temp file in the same directory plus rename, so readers
/// never observe a partial file. Throws std::runtime_error with the path on
/// I/O failure.
void write_text_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_text_file(const std::filesystem::path& path);

std::string fmt_number(double x);               // compact, locale-free
std::string fmt_fixed(double x, int decimals);  // fixed decimals

/// Stable id for one simulated cell, e.g. "e0.3-d0.3-m1.6-s17".
std::string run_id_string(double epsilon, double delta, double mu, std::uint64_t seed);

// --- payoff matrices ---------------------------------------------------

/// CSV with 2-dp cells; headers carry both the matrix labels (S1 lowest)
/// and the figure labels (F1 highest).
std::string matrix_csv(const BimatrixGame& g);
std::string matrix_text(const BimatrixGame& g);
std::pair<Table6x6, Table6x6> parse_matrix_csv(const std::string& text);

// --- Nash reports -------------------------------------------------------

std::string nash_text(const BimatrixGame& g, const NashResult& r);
std::string nash_csv(const BimatrixGame& g, const NashResult& r);

// --- time series ----------------------------------------------------------

/// Schema: run_id, round, role, s1..s6 with s1 the lowest level (matrix
/// convention, named in a leading comment). Counts, two rows per round.
std::string timeseries_csv(const std::string& run_id, const SimulationSeries& series);
SimulationSeries parse_timeseries_csv(const std::string& text);

// --- summaries -------------------------------------------------------------

std::string summary_csv_header();
std::string summary_csv_rows(double epsilon, double delta, double mu, std::uint64_t seed,
                             const std::vector<RunSummary>& summaries);

struct SummaryRow {
  double epsilon = 0, delta = 0, mu = 0;
  std::uint64_t seed = 0;
  RunSummary summary;
};
std::vector<SummaryRow> parse_summary_csv(const std::string& text);

// --- static SVG charts -----------------------------------------------------

/// Strategy-share percentage vs round, six line series, figure labeling
/// (1 = highest level first).
std::string svg_chart(const SimulationSeries& series, Role role, const std::string& title);

// --- manifests ---------------------------------------------------------

struct FileRecord {
  std::string name;
  std::uint64_t checksum = 0;
};

std::string iso8601_utc_now();

std::string simulate_manifest_json(const ToolConfig& cfg, const std::string& run_id,
                                   const std::vector<FileRecord>& files, double wall_ms);

std::string sweep_manifest_json(const ToolConfig& cfg, const SweepResult& result,
                                const std::vector<std::uint64_t>& run_checksums,
                                const std::vector<FileRecord>& files, double wall_ms);

// --- sweep report tables ------------------------------------------------

/// One 4x5 expected-level table: rows deltas, columns mus, mu = 0 labeled
/// Double Blind and mu > 0 Open Review.
std::string report_table_markdown(const std::string& title, const std::vector<double>& deltas,
                                  const std::vector<double>& mus,
                                  const std::vector<std::vector<double>>& cells);
std::string report_table_csv(const std::string& title, const std::vector<double>& deltas,
                             const std::vector<double>& mus,
                             const std::vector<std::vector<double>>& cells);

}  // namespace prsim

#endif
