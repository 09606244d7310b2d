#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <ostream>

#include <json.hpp>

#include "prsim/report.hpp"

namespace prsim::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int fail(std::ostream& err, const std::string& message) {
  err << "error: " << message << "\n";
  return 1;
}

void emit(const std::string& content, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << content;
  } else {
    write_text_atomic(out_path, content);
  }
}

std::string window_phrase(const WindowSpec& w) {
  if (w.kind == WindowKind::entire_history) return "entire history";
  return "last " + std::to_string(w.k) + " recorded rounds";
}

}  // namespace

int cmd_matrix(const ToolConfig& cfg, const std::string& format,
               const std::string& out_path, std::ostream& out, std::ostream& err) {
  try {
    const BimatrixGame g = build_game(cfg.run.game, cfg.run.space);
    emit(format == "csv" ? matrix_csv(g) : matrix_text(g), out_path, out);
    return 0;
  } catch (const std::exception& ex) {
    return fail(err, ex.what());
  }
}

int cmd_nash(const ToolConfig& cfg, double tolerance, const std::string& format,
             const std::string& out_path, std::ostream& out, std::ostream& err) {
  try {
    const BimatrixGame g = build_game(cfg.run.game, cfg.run.space);
    const NashResult r = enumerate_pure_nash(g, tolerance);
    emit(format == "csv" ? nash_csv(g, r) : nash_text(g, r), out_path, out);
    return 0;
  } catch (const std::exception& ex) {
    return fail(err, ex.what());
  }
}

int cmd_simulate(const ToolConfig& cfg, const std::string& out_dir, bool emit_svg,
                 std::ostream& out, std::ostream& err) {
  try {
    if (out_dir.empty()) return fail(err, "simulate requires --out-dir");
    fs::create_directories(out_dir);

    const auto t0 = std::chrono::steady_clock::now();
    const SimulationSeries series = run_simulation(cfg.run);
    const double wall_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - t0)
                               .count();

    const GameParams& g = cfg.run.game;
    const std::string id = run_id_string(g.epsilon, g.delta, g.mu, cfg.run.seed);
    const WindowSpec last = WindowSpec::last(
        std::min<std::int64_t>(3000, static_cast<std::int64_t>(series.size())));

    std::vector<RunSummary> summaries;
    for (Role role : {Role::author, Role::reviewer}) {
      for (const WindowSpec& w : {WindowSpec::entire(), last}) {
        summaries.push_back(summarize(series, role, w, cfg.run.space));
      }
    }

    std::vector<FileRecord> files;
    const auto write_file = [&](const std::string& name, const std::string& content) {
      write_text_atomic(fs::path(out_dir) / name, content);
      files.push_back({name, fnv1a64(content)});
    };
    write_file("timeseries.csv", timeseries_csv(id, series));
    write_file("summary.csv", summary_csv_header() + summary_csv_rows(g.epsilon, g.delta,
                                                                      g.mu, cfg.run.seed,
                                                                      summaries));
    if (emit_svg) {
      for (Role role : {Role::author, Role::reviewer}) {
        const std::string title =
            std::string(role_name(role)) + "s, epsilon=" + fmt_number(g.epsilon) +
            " delta=" + fmt_number(g.delta) + " mu=" + fmt_number(g.mu) +
            " seed=" + std::to_string(cfg.run.seed);
        write_file(std::string("chart_") + role_name(role) + "s.svg",
                   svg_chart(series, role, title));
      }
    }
    write_text_atomic(fs::path(out_dir) / "manifest.json",
                      simulate_manifest_json(cfg, id, files, wall_ms));

    out << "simulated " << cfg.run.rounds << " rounds (run " << id << ", "
        << fmt_fixed(wall_ms / 1000.0, 2) << " s); wrote " << files.size() + 1
        << " files to " << out_dir << "\n";
    return 0;
  } catch (const std::exception& ex) {
    return fail(err, ex.what());
  }
}

int cmd_sweep(const ToolConfig& cfg, const std::string& out_dir, std::ostream& out,
              std::ostream& err) {
  try {
    if (out_dir.empty()) return fail(err, "sweep requires --out-dir");
    fs::create_directories(out_dir);

    const auto t0 = std::chrono::steady_clock::now();
    const SweepResult result = run_sweep(cfg.sweep, cfg.parallelism);
    const double wall_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - t0)
                               .count();

    std::string summary = summary_csv_header();
    std::vector<std::uint64_t> checksums(result.runs.size(), 0);
    std::size_t failures = 0;
    for (std::size_t i = 0; i < result.runs.size(); ++i) {
      const RunOutcome& r = result.runs[i];
      if (!r.ok) {
        ++failures;
        err << "run " << run_id_string(r.epsilon, r.delta, r.mu, r.seed)
            << " failed: " << r.error << "\n";
        continue;
      }
      const std::string rows =
          summary_csv_rows(r.epsilon, r.delta, r.mu, r.seed, r.summaries);
      checksums[i] = fnv1a64(rows);
      summary += rows;
    }

    std::string nash_counts = "# pure-strategy Nash equilibria per combination; cells are "
                              "1-based (row,col) pairs, row = effort index ascending\n";
    nash_counts += "epsilon,delta,mu,count,cells\n";
    for (const CombinationResult& c : result.combinations) {
      if (!c.ok) continue;  // invalid games are listed in the manifest only
      std::string cells;
      for (const auto& [i, j] : c.nash.equilibria) {
        if (!cells.empty()) cells += ';';
        cells += std::to_string(i + 1) + "-" + std::to_string(j + 1);
      }
      nash_counts += fmt_number(c.epsilon) + "," + fmt_number(c.delta) + "," +
                     fmt_number(c.mu) + "," + std::to_string(c.nash.count) + "," + cells +
                     "\n";
    }

    std::vector<FileRecord> files;
    const auto write_file = [&](const std::string& name, const std::string& content) {
      write_text_atomic(fs::path(out_dir) / name, content);
      files.push_back({name, fnv1a64(content)});
    };
    write_file("summary.csv", summary);
    write_file("nash_counts.csv", nash_counts);
    write_text_atomic(fs::path(out_dir) / "manifest.json",
                      sweep_manifest_json(cfg, result, checksums, files, wall_ms));

    out << "sweep complete: " << result.runs.size() << " runs ("
        << result.combinations.size() << " combinations), " << failures << " failures, "
        << fmt_fixed(wall_ms / 1000.0, 1) << " s; wrote " << files.size() + 1
        << " files to " << out_dir << "\n";
    return 0;
  } catch (const std::exception& ex) {
    return fail(err, ex.what());
  }
}

int cmd_report(const std::string& in_dir, const std::string& role_filter,
               const std::string& window_filter, const std::string& format,
               const std::string& out_dir, std::ostream& out, std::ostream& err) {
  try {
    const fs::path manifest_path = fs::path(in_dir) / "manifest.json";
    if (in_dir.empty() || !fs::exists(manifest_path)) {
      return fail(err, "no manifest found in '" + in_dir + "'");
    }
    const json manifest = json::parse(read_text_file(manifest_path));
    if (manifest.value("kind", "") != "sweep") {
      return fail(err, "manifest in '" + in_dir + "' is not a sweep manifest");
    }
    if (!manifest.contains("grid") || !manifest.contains("runs")) {
      return fail(err, "sweep manifest is missing grid/runs sections");
    }
    std::size_t failed = 0;
    for (const json& r : manifest.at("runs")) {
      if (r.value("status", "") != "ok") ++failed;
    }
    if (failed > 0) {
      return fail(err, "incomplete sweep: " + std::to_string(failed) +
                           " failed runs recorded in the manifest");
    }

    const std::vector<double> epsilons = manifest.at("grid").at("epsilons");
    const std::vector<double> deltas = manifest.at("grid").at("deltas");
    const std::vector<double> mus = manifest.at("grid").at("mus");
    std::vector<std::string> window_labels = manifest.at("windows");

    const std::vector<SummaryRow> rows =
        parse_summary_csv(read_text_file(fs::path(in_dir) / "summary.csv"));

    std::vector<Role> roles{Role::author, Role::reviewer};
    if (role_filter != "both") roles = {parse_role(role_filter)};
    if (window_filter != "both") window_labels = {window_filter};

    // median expected level per (delta, mu) cell
    const auto table_for = [&](double epsilon, Role role, const WindowSpec& w) {
      std::vector<std::vector<double>> cells(deltas.size(),
                                             std::vector<double>(mus.size()));
      for (std::size_t di = 0; di < deltas.size(); ++di) {
        for (std::size_t mi = 0; mi < mus.size(); ++mi) {
          std::vector<double> values;
          for (const SummaryRow& row : rows) {
            if (row.epsilon == epsilon && row.delta == deltas[di] && row.mu == mus[mi] &&
                row.summary.role == role && row.summary.window.kind == w.kind &&
                (w.kind == WindowKind::entire_history || row.summary.window.k == w.k)) {
              values.push_back(row.summary.expected_level);
            }
          }
          cells[di][mi] = round3(median(std::move(values)));
        }
      }
      return cells;
    };

    std::string document;
    std::size_t tables = 0;
    for (double epsilon : epsilons) {
      for (Role role : roles) {
        for (const std::string& wlabel : window_labels) {
          const WindowSpec w = parse_window_label(wlabel);
          const std::string title =
              std::string("expected ") +
              (role == Role::author ? "effort levels (authors)"
                                    : "threshold levels (reviewers)") +
              ", " + window_phrase(w) + ", epsilon=" + fmt_number(epsilon) +
              "; cells: median over seeds, 3 decimals";
          const auto cells = table_for(epsilon, role, w);
          ++tables;
          if (format == "csv") {
            if (out_dir.empty()) return fail(err, "report --format csv requires --out-dir");
            std::string name = "report_e" + fmt_number(epsilon) + "_" + role_name(role) +
                               "s_" + wlabel + ".csv";
            std::replace(name.begin(), name.end(), ':', '_');
            fs::create_directories(out_dir);
            write_text_atomic(fs::path(out_dir) / name,
                              report_table_csv(title, deltas, mus, cells));
          } else {
            document += report_table_markdown(title, deltas, mus, cells);
          }
        }
      }
    }

    if (format == "csv") {
      out << "wrote " << tables << " report tables to " << out_dir << "\n";
    } else if (!out_dir.empty()) {
      fs::create_directories(out_dir);
      write_text_atomic(fs::path(out_dir) / "report.md", document);
      out << "wrote report.md (" << tables << " tables) to " << out_dir << "\n";
    } else {
      out << document;
    }
    return 0;
  } catch (const std::exception& ex) {
    return fail(err, ex.what());
  }
}

}  // namespace prsim::cli
