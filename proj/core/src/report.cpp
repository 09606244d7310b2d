#include "prsim/report.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace prsim {

using nlohmann::json;

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

void write_text_atomic(const std::filesystem::path& path, std::string_view content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw std::runtime_error("rename failed: " + tmp.string() + " -> " + path.string() +
                             " (" + ec.message() + ")");
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string fmt_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string fmt_fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
  return buf;
}

std::string run_id_string(double epsilon, double delta, double mu, std::uint64_t seed) {
  return "e" + fmt_number(epsilon) + "-d" + fmt_number(delta) + "-m" + fmt_number(mu) +
         "-s" + std::to_string(seed);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

std::string matrix_label(int index) { return "S" + std::to_string(index + 1); }
std::string figure_label(int index) { return "F" + std::to_string(kNumStrategies - index); }

std::string game_param_line(const BimatrixGame& g) {
  const GameParams& p = g.params;
  return "epsilon=" + fmt_number(p.epsilon) + " delta=" + fmt_number(p.delta) +
         " mu=" + fmt_number(p.mu) + " alpha=" + fmt_number(p.alpha) +
         " beta=" + fmt_number(p.beta) + " ebar=" + fmt_number(p.ebar);
}

}  // namespace

std::string matrix_csv(const BimatrixGame& g) {
  std::string out;
  out += "# payoff matrices, cells rounded to 2 decimals\n";
  out +=
      "# rows: author efforts ascending (S1..S6; figure labels F6..F1); "
      "columns: reviewer thresholds ascending\n";
  out += "# " + game_param_line(g) + "\n";
  out += "row,fig_row,effort";
  for (const char* side : {"author", "reviewer"}) {
    for (int j = 0; j < kNumStrategies; ++j) {
      out += "," + std::string(side) + ":" + matrix_label(j) + "/" + figure_label(j) +
             ":t=" + fmt_number(g.space.thresholds[j]);
    }
  }
  out += "\n";
  for (int i = 0; i < kNumStrategies; ++i) {
    out += matrix_label(i) + "," + figure_label(i) + "," + fmt_number(g.space.efforts[i]);
    for (int j = 0; j < kNumStrategies; ++j) out += "," + fmt_fixed(round2(g.author[i][j]), 2);
    for (int j = 0; j < kNumStrategies; ++j) out += "," + fmt_fixed(round2(g.reviewer[i][j]), 2);
    out += "\n";
  }
  return out;
}

std::pair<Table6x6, Table6x6> parse_matrix_csv(const std::string& text) {
  const std::vector<std::string> lines = data_lines(text);
  if (lines.size() != 1 + kNumStrategies) {
    throw std::invalid_argument("matrix CSV must carry a header and 6 rows");
  }
  Table6x6 author{};
  Table6x6 reviewer{};
  for (int i = 0; i < kNumStrategies; ++i) {
    const auto fields = split_csv_line(lines[i + 1]);
    if (fields.size() != 3 + 2 * kNumStrategies) {
      throw std::invalid_argument("matrix CSV row has wrong field count");
    }
    for (int j = 0; j < kNumStrategies; ++j) {
      author[i][j] = std::stod(fields[3 + j]);
      reviewer[i][j] = std::stod(fields[3 + kNumStrategies + j]);
    }
  }
  return {author, reviewer};
}

std::string matrix_text(const BimatrixGame& g) {
  std::string out;
  out += "payoff matrices (author, reviewer), cells rounded to 2 decimals\n";
  out += game_param_line(g) + "\n";
  out +=
      "rows: author efforts ascending (S1..S6; figure labels F6..F1); "
      "columns: reviewer thresholds ascending\n\n";

  char buf[64];
  out += "              ";
  for (int j = 0; j < kNumStrategies; ++j) {
    std::snprintf(buf, sizeof(buf), "  %s/%s t=%-4s  ", matrix_label(j).c_str(),
                  figure_label(j).c_str(), fmt_number(g.space.thresholds[j]).c_str());
    out += buf;
  }
  out += "\n";
  for (int i = 0; i < kNumStrategies; ++i) {
    std::snprintf(buf, sizeof(buf), "%s/%s e=%-4s  ", matrix_label(i).c_str(),
                  figure_label(i).c_str(), fmt_number(g.space.efforts[i]).c_str());
    out += buf;
    for (int j = 0; j < kNumStrategies; ++j) {
      std::snprintf(buf, sizeof(buf), " (%5.2f,%5.2f) ", round2(g.author[i][j]),
                    round2(g.reviewer[i][j]));
      out += buf;
    }
    out += "\n";
  }
  return out;
}

std::string nash_text(const BimatrixGame& g, const NashResult& r) {
  std::string out = "pure-strategy Nash equilibria: " + std::to_string(r.count) +
                    " (tolerance " + fmt_number(r.tolerance) + ")\n";
  for (const auto& [i, j] : r.equilibria) {
    out += "  (" + matrix_label(i) + "," + matrix_label(j) +
           ") effort=" + fmt_number(g.space.efforts[i]) +
           " threshold=" + fmt_number(g.space.thresholds[j]) + "  [figure " +
           figure_label(i) + "," + figure_label(j) + "]\n";
  }
  return out;
}

std::string nash_csv(const BimatrixGame& g, const NashResult& r) {
  std::string out = "# count=" + std::to_string(r.count) + " tolerance=" +
                    fmt_number(r.tolerance) + "\n";
  out += "row,col,effort,threshold,fig_row,fig_col\n";
  for (const auto& [i, j] : r.equilibria) {
    out += matrix_label(i) + "," + matrix_label(j) + "," + fmt_number(g.space.efforts[i]) +
           "," + fmt_number(g.space.thresholds[j]) + "," + figure_label(i) + "," +
           figure_label(j) + "\n";
  }
  return out;
}

std::string timeseries_csv(const std::string& run_id, const SimulationSeries& series) {
  std::string out;
  out +=
      "# per-round strategy counts; s1..s6 follow the matrix convention "
      "(s1 = lowest effort/threshold, s6 = highest)\n";
  out += "run_id,round,role,s1,s2,s3,s4,s5,s6\n";
  for (const SeriesEntry& e : series) {
    for (const char* role : {"author", "reviewer"}) {
      const Counts6& c = role[0] == 'a' ? e.author_counts : e.reviewer_counts;
      out += run_id + "," + std::to_string(e.round) + "," + role;
      for (int k = 0; k < kNumStrategies; ++k) out += "," + std::to_string(c[k]);
      out += "\n";
    }
  }
  return out;
}

SimulationSeries parse_timeseries_csv(const std::string& text) {
  const std::vector<std::string> lines = data_lines(text);
  if (lines.empty()) throw std::invalid_argument("time-series CSV is empty");
  SimulationSeries series;
  std::unordered_map<std::int64_t, std::size_t> index;
  for (std::size_t li = 1; li < lines.size(); ++li) {  // lines[0] is the header
    const auto fields = split_csv_line(lines[li]);
    if (fields.size() != 3 + kNumStrategies) {
      throw std::invalid_argument("time-series CSV row has wrong field count");
    }
    const std::int64_t round = std::stoll(fields[1]);
    auto [it, inserted] = index.try_emplace(round, series.size());
    if (inserted) series.push_back({round, {}, {}});
    SeriesEntry& entry = series[it->second];
    Counts6& counts =
        fields[2] == "author" ? entry.author_counts : entry.reviewer_counts;
    for (int k = 0; k < kNumStrategies; ++k) counts[k] = std::stoi(fields[3 + k]);
  }
  return series;
}

std::string summary_csv_header() {
  std::string out =
      "# mean_s*/std_s* are percentages per strategy; the labeling column "
      "names their order\n";
  out += "epsilon,delta,mu,seed,role,window";
  for (int k = 1; k <= kNumStrategies; ++k) out += ",mean_s" + std::to_string(k);
  for (int k = 1; k <= kNumStrategies; ++k) out += ",std_s" + std::to_string(k);
  out += ",s_bar,expected_level,labeling\n";
  return out;
}

std::string summary_csv_rows(double epsilon, double delta, double mu, std::uint64_t seed,
                             const std::vector<RunSummary>& summaries) {
  std::string out;
  for (const RunSummary& s : summaries) {
    out += fmt_number(epsilon) + "," + fmt_number(delta) + "," + fmt_number(mu) + "," +
           std::to_string(seed) + "," + role_name(s.role) + "," + window_label(s.window);
    for (int k = 0; k < kNumStrategies; ++k) out += "," + fmt_number(s.mean_pct[k]);
    for (int k = 0; k < kNumStrategies; ++k) out += "," + fmt_number(s.std_pct[k]);
    out += "," + fmt_number(s.s_bar) + "," + fmt_number(s.expected_level) + "," +
           labeling_name(s.labeling) + "\n";
  }
  return out;
}

std::vector<SummaryRow> parse_summary_csv(const std::string& text) {
  const std::vector<std::string> lines = data_lines(text);
  if (lines.empty()) throw std::invalid_argument("summary CSV is empty");
  std::vector<SummaryRow> rows;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto f = split_csv_line(lines[li]);
    if (f.size() != 6 + 2 * kNumStrategies + 3) {
      throw std::invalid_argument("summary CSV row has wrong field count");
    }
    SummaryRow row;
    row.epsilon = std::stod(f[0]);
    row.delta = std::stod(f[1]);
    row.mu = std::stod(f[2]);
    row.seed = std::stoull(f[3]);
    row.summary.role = parse_role(f[4]);
    row.summary.window = parse_window_label(f[5]);
    for (int k = 0; k < kNumStrategies; ++k) row.summary.mean_pct[k] = std::stod(f[6 + k]);
    for (int k = 0; k < kNumStrategies; ++k) {
      row.summary.std_pct[k] = std::stod(f[6 + kNumStrategies + k]);
    }
    row.summary.s_bar = std::stod(f[6 + 2 * kNumStrategies]);
    row.summary.expected_level = std::stod(f[7 + 2 * kNumStrategies]);
    const std::string& lab = f[8 + 2 * kNumStrategies];
    if (lab == "highest_first") {
      row.summary.labeling = Labeling::highest_first;
    } else if (lab == "lowest_first") {
      row.summary.labeling = Labeling::lowest_first;
    } else {
      throw std::invalid_argument("bad labeling: " + lab);
    }
    rows.push_back(row);
  }
  return rows;
}

std::string svg_chart(const SimulationSeries& series, Role role, const std::string& title) {
  if (series.empty()) throw std::invalid_argument("cannot chart an empty series");
  constexpr int kW = 960, kH = 540, kLeft = 60, kRight = 790, kTop = 50, kBottom = 490;
  // Figure labeling: series 1 (green) is the highest level, 6 (red) the lowest.
  static const char* kColors[kNumStrategies] = {"#1a9850", "#66bd63", "#a6d96a",
                                                "#fdae61", "#f46d43", "#d73027"};

  const double max_round = static_cast<double>(series.back().round);
  const auto x_of = [&](std::int64_t round) {
    if (max_round <= 0) return static_cast<double>(kLeft);
    return kLeft + (kRight - kLeft) * (static_cast<double>(round) / max_round);
  };
  const auto y_of = [&](double pct) { return kBottom - (kBottom - kTop) * (pct / 100.0); };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kW) +
         "\" height=\"" + std::to_string(kH) + "\" viewBox=\"0 0 " + std::to_string(kW) +
         " " + std::to_string(kH) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + std::to_string(kLeft) + "\" y=\"28\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + title + "</text>\n";

  for (int pct = 0; pct <= 100; pct += 20) {
    const double y = y_of(pct);
    out += "<line x1=\"" + std::to_string(kLeft) + "\" y1=\"" + fmt_fixed(y, 1) +
           "\" x2=\"" + std::to_string(kRight) + "\" y2=\"" + fmt_fixed(y, 1) +
           "\" stroke=\"#dddddd\"/>\n";
    out += "<text x=\"" + std::to_string(kLeft - 8) + "\" y=\"" + fmt_fixed(y + 4, 1) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           std::to_string(pct) + "%</text>\n";
  }
  for (int tick = 0; tick <= 5; ++tick) {
    const auto round = static_cast<std::int64_t>(max_round * tick / 5.0);
    const double x = x_of(round);
    out += "<text x=\"" + fmt_fixed(x, 1) + "\" y=\"" + std::to_string(kBottom + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           std::to_string(round) + "</text>\n";
  }
  out += "<line x1=\"" + std::to_string(kLeft) + "\" y1=\"" + std::to_string(kTop) +
         "\" x2=\"" + std::to_string(kLeft) + "\" y2=\"" + std::to_string(kBottom) +
         "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + std::to_string(kLeft) + "\" y1=\"" + std::to_string(kBottom) +
         "\" x2=\"" + std::to_string(kRight) + "\" y2=\"" + std::to_string(kBottom) +
         "\" stroke=\"black\"/>\n";

  const std::size_t stride = std::max<std::size_t>(1, series.size() / 1920);
  for (int s = kNumStrategies - 1; s >= 0; --s) {  // s: matrix index, 0 = lowest
    const int fig = kNumStrategies - s;            // 1 = highest
    std::string points;
    for (std::size_t i = 0; i < series.size(); i += stride) {
      const SeriesEntry& e = series[i];
      const Counts6& c = role == Role::author ? e.author_counts : e.reviewer_counts;
      long pop = 0;
      for (int v : c) pop += v;
      const double pct = 100.0 * static_cast<double>(c[s]) / static_cast<double>(pop);
      points += fmt_fixed(x_of(e.round), 1) + "," + fmt_fixed(y_of(pct), 1) + " ";
    }
    out += "<polyline fill=\"none\" stroke=\"" + std::string(kColors[fig - 1]) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    const int ly = kTop + 20 * fig;
    out += "<rect x=\"" + std::to_string(kRight + 16) + "\" y=\"" + std::to_string(ly - 9) +
           "\" width=\"12\" height=\"12\" fill=\"" + kColors[fig - 1] + "\"/>\n";
    out += "<text x=\"" + std::to_string(kRight + 34) + "\" y=\"" + std::to_string(ly + 2) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + std::to_string(fig) +
           (fig == 1 ? " (highest)" : fig == kNumStrategies ? " (lowest)" : "") +
           "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

json tool_header(const ToolConfig& cfg, const char* kind, double wall_ms) {
  json j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["kind"] = kind;
  j["rng"] = kRngAlgorithmId;
  j["created_utc"] = iso8601_utc_now();  // informational; not part of determinism
  j["wall_ms"] = wall_ms;
  j["config"] = json::parse(config_to_json(cfg));
  return j;
}

json file_records_json(const std::vector<FileRecord>& files) {
  json arr = json::array();
  for (const FileRecord& f : files) {
    arr.push_back({{"name", f.name}, {"fnv1a64", hex64(f.checksum)}});
  }
  return arr;
}

}  // namespace

std::string simulate_manifest_json(const ToolConfig& cfg, const std::string& run_id,
                                   const std::vector<FileRecord>& files, double wall_ms) {
  json j = tool_header(cfg, "simulate", wall_ms);
  j["run_id"] = run_id;
  j["files"] = file_records_json(files);
  return j.dump(2) + "\n";
}

std::string sweep_manifest_json(const ToolConfig& cfg, const SweepResult& result,
                                const std::vector<std::uint64_t>& run_checksums,
                                const std::vector<FileRecord>& files, double wall_ms) {
  json j = tool_header(cfg, "sweep", wall_ms);
  j["grid"] = {{"epsilons", result.grid.epsilons},
               {"deltas", result.grid.deltas},
               {"mus", result.grid.mus},
               {"seeds", result.grid.seeds}};
  j["windows"] = {window_label(WindowSpec::entire()), window_label(result.last_window)};

  json combos = json::array();
  for (const CombinationResult& c : result.combinations) {
    json entry = {{"epsilon", c.epsilon}, {"delta", c.delta}, {"mu", c.mu}};
    if (c.ok) {
      json cells = json::array();
      for (const auto& [i, jcol] : c.nash.equilibria) cells.push_back({i + 1, jcol + 1});
      entry["nash_count"] = c.nash.count;
      entry["nash_cells"] = cells;
    } else {
      entry["error"] = c.error;
    }
    combos.push_back(entry);
  }
  j["combinations"] = combos;

  json runs = json::array();
  json failures = json::array();
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    const RunOutcome& r = result.runs[i];
    const std::string id = run_id_string(r.epsilon, r.delta, r.mu, r.seed);
    json entry = {{"run_id", id},
                  {"epsilon", r.epsilon},
                  {"delta", r.delta},
                  {"mu", r.mu},
                  {"seed", r.seed},
                  {"status", r.ok ? "ok" : "failed"},
                  {"wall_ms", r.wall_ms}};
    if (r.ok && i < run_checksums.size()) entry["checksum"] = hex64(run_checksums[i]);
    runs.push_back(entry);
    if (!r.ok) failures.push_back({{"run_id", id}, {"error", r.error}});
  }
  j["runs"] = runs;
  j["failures"] = failures;
  j["files"] = file_records_json(files);
  return j.dump(2) + "\n";
}

namespace {

std::string mu_column_title(double mu) {
  return (mu == 0.0 ? "Double Blind (mu=0)" : "Open Review (mu=" + fmt_number(mu) + ")");
}

std::string cell_text(double v) {
  return std::isnan(v) ? std::string("n/a") : fmt_fixed(v, 3);
}

}  // namespace

std::string report_table_markdown(const std::string& title, const std::vector<double>& deltas,
                                  const std::vector<double>& mus,
                                  const std::vector<std::vector<double>>& cells) {
  std::string out = "### " + title + "\n\n";
  out += "| delta \\ mu |";
  for (double mu : mus) out += " " + mu_column_title(mu) + " |";
  out += "\n|---|";
  for (std::size_t i = 0; i < mus.size(); ++i) out += "---|";
  out += "\n";
  for (std::size_t di = 0; di < deltas.size(); ++di) {
    out += "| " + fmt_number(deltas[di]) + " |";
    for (std::size_t mi = 0; mi < mus.size(); ++mi) out += " " + cell_text(cells[di][mi]) + " |";
    out += "\n";
  }
  out += "\n";
  return out;
}

std::string report_table_csv(const std::string& title, const std::vector<double>& deltas,
                             const std::vector<double>& mus,
                             const std::vector<std::vector<double>>& cells) {
  std::string out = "# " + title + "\n";
  out += "delta";
  for (double mu : mus) {
    out += std::string(",") + (mu == 0.0 ? "double_blind" : "open_review") +
           ":mu=" + fmt_number(mu);
  }
  out += "\n";
  for (std::size_t di = 0; di < deltas.size(); ++di) {
    out += fmt_number(deltas[di]);
    for (std::size_t mi = 0; mi < mus.size(); ++mi) out += "," + cell_text(cells[di][mi]);
    out += "\n";
  }
  return out;
}

}  // namespace prsim
