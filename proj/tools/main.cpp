#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "prsim/config.hpp"

namespace {

using prsim::ToolConfig;

// The config file must be loaded before flag binding so that flags override
// file values; scan argv for it up front.
std::string find_config_arg(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return argv[i + 1];
    if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
  }
  return {};
}

struct FlagState {
  ToolConfig cfg;
  std::string ebar_mode = "table";
  double ebar_explicit = 0.0;
  std::string averaging = "population_weighted";
  std::string update = "synchronous";
  std::string config_path;  // accepted everywhere; handled by the pre-scan
};

void add_game_flags(CLI::App* cmd, FlagState& st) {
  cmd->add_option("--epsilon", st.cfg.run.game.epsilon, "author reputation weight");
  cmd->add_option("--delta", st.cfg.run.game.delta, "reviewer ease bonus weight");
  cmd->add_option("--mu", st.cfg.run.game.mu, "open-review reputation weight (0 = double blind)");
  cmd->add_option("--alpha", st.cfg.run.game.alpha, "economy bonus weight");
  cmd->add_option("--beta", st.cfg.run.game.beta, "effort cost weight");
  cmd->add_option("--ebar-mode", st.ebar_mode, "reference level convention")
      ->check(CLI::IsMember({"table", "text"}));
  cmd->add_option("--ebar", st.ebar_explicit, "explicit reference level, overrides --ebar-mode");
  cmd->add_option("--config", st.config_path, "JSON config file; flags override its values");
}

void add_protocol_flags(CLI::App* cmd, FlagState& st) {
  auto& rev = st.cfg.run.revision;
  cmd->add_option("--rounds", st.cfg.run.rounds, "rounds to simulate");
  cmd->add_option("--seed", st.cfg.run.seed, "base RNG seed");
  cmd->add_option("--record-every", st.cfg.run.record_every, "recording stride");
  cmd->add_option("--population", st.cfg.run.population_size, "agents per role");
  cmd->add_option("--prob-revision", rev.prob_revision, "per-agent revision probability");
  cmd->add_option("--candidates", rev.n_candidates, "candidate record size (peers + self)");
  cmd->add_option("--eta", rev.eta, "logit noise level");
  cmd->add_option("--prob-mutation", rev.prob_mutation, "per-revision mutation probability");
  cmd->add_option("--averaging", st.averaging, "candidate payoff averaging")
      ->check(CLI::IsMember({"population_weighted", "population", "uniform_over_types", "uniform"}));
  cmd->add_option("--update", st.update, "revision application timing")
      ->check(CLI::IsMember({"synchronous", "sequential"}));
}

void resolve_enums(FlagState& st, bool ebar_given) {
  st.cfg.ebar_mode = prsim::parse_ebar_mode(st.ebar_mode);
  st.cfg.run.revision.payoff_averaging = prsim::parse_averaging(st.averaging);
  st.cfg.run.revision.update_timing = prsim::parse_timing(st.update);
  st.cfg.run.game.ebar = ebar_given ? st.ebar_explicit
                                    : prsim::ebar_value(st.cfg.ebar_mode, st.cfg.run.space);
  st.cfg.sweep.base = st.cfg.run;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"author-reviewer game toolkit: payoff matrices, pure Nash equilibria,\n"
               "logit-imitation population dynamics, parameter sweeps and reports"};
  app.require_subcommand(1);

  FlagState st;
  try {
    const std::string config_path = find_config_arg(argc, argv);
    st.cfg = config_path.empty() ? prsim::default_config()
                                 : prsim::load_config_file(config_path);
    st.ebar_mode = prsim::ebar_mode_name(st.cfg.ebar_mode);
    st.averaging = prsim::averaging_name(st.cfg.run.revision.payoff_averaging);
    st.update = prsim::timing_name(st.cfg.run.revision.update_timing);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }

  std::string format = "text";
  std::string out_path;
  std::string out_dir;
  std::string in_dir;
  std::string role = "both";
  std::string window = "both";
  double tolerance = 1e-9;
  bool svg = false;

  CLI::App* matrix = app.add_subcommand("matrix", "print or save the 6x6 payoff matrices");
  add_game_flags(matrix, st);
  matrix->add_option("--format", format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
  matrix->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* nash = app.add_subcommand("nash", "enumerate pure-strategy Nash equilibria");
  add_game_flags(nash, st);
  nash->add_option("--tolerance", tolerance, "payoff comparison tolerance");
  nash->add_option("--format", format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
  nash->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* simulate = app.add_subcommand("simulate", "run one seeded simulation");
  add_game_flags(simulate, st);
  add_protocol_flags(simulate, st);
  simulate->add_option("--out-dir", out_dir, "directory for CSV/manifest output")->required();
  simulate->add_flag("--svg", svg, "also write strategy-share charts");

  CLI::App* sweep = app.add_subcommand("sweep", "run the (epsilon, delta, mu) x seeds grid");
  add_game_flags(sweep, st);
  add_protocol_flags(sweep, st);
  sweep->add_option("--epsilons", st.cfg.sweep.epsilons, "epsilon grid");
  sweep->add_option("--deltas", st.cfg.sweep.deltas, "delta grid");
  sweep->add_option("--mus", st.cfg.sweep.mus, "mu grid");
  sweep->add_option("--seeds", st.cfg.sweep.seeds, "seeds per combination");
  sweep->add_option("--parallelism", st.cfg.parallelism, "worker threads");
  sweep->add_option("--out-dir", out_dir, "directory for CSV/manifest output")->required();

  CLI::App* report = app.add_subcommand("report", "tabulate a completed sweep");
  report->add_option("--in-dir", in_dir, "directory holding a sweep manifest")->required();
  report->add_option("--role", role, "author, reviewer or both")
      ->check(CLI::IsMember({"author", "reviewer", "both"}));
  report->add_option("--window", window, "entire, last:K or both");
  report->add_option("--format", format, "md or csv")->check(CLI::IsMember({"md", "csv"}));
  report->add_option("--out-dir", out_dir, "directory for table output (md default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    resolve_enums(st, matrix->count("--ebar") + nash->count("--ebar") +
                          simulate->count("--ebar") + sweep->count("--ebar") >
                      0);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }

  if (matrix->parsed()) {
    return prsim::cli::cmd_matrix(st.cfg, format, out_path, std::cout, std::cerr);
  }
  if (nash->parsed()) {
    return prsim::cli::cmd_nash(st.cfg, tolerance, format, out_path, std::cout, std::cerr);
  }
  if (simulate->parsed()) {
    return prsim::cli::cmd_simulate(st.cfg, out_dir, svg, std::cout, std::cerr);
  }
  if (sweep->parsed()) {
    return prsim::cli::cmd_sweep(st.cfg, out_dir, std::cout, std::cerr);
  }
  if (report->parsed()) {
    return prsim::cli::cmd_report(in_dir, role, window, format, out_dir, std::cout,
                                  std::cerr);
  }
  return 1;
}
