#include "prsim/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace prsim {

using nlohmann::json;

void ToolConfig::finalize() {
  run.game.ebar = ebar_value(ebar_mode, run.space);
  sweep.base = run;
}

ToolConfig default_config() {
  ToolConfig cfg;
  cfg.run.game.epsilon = 0.1;
  cfg.run.game.delta = 0.0;
  cfg.run.game.mu = 0.0;
  cfg.finalize();
  return cfg;
}

const char* role_name(Role role) { return role == Role::author ? "author" : "reviewer"; }

const char* labeling_name(Labeling labeling) {
  return labeling == Labeling::highest_first ? "highest_first" : "lowest_first";
}

const char* averaging_name(PayoffAveraging mode) {
  return mode == PayoffAveraging::population_weighted ? "population_weighted"
                                                      : "uniform_over_types";
}

const char* timing_name(UpdateTiming timing) {
  return timing == UpdateTiming::synchronous ? "synchronous" : "sequential";
}

const char* ebar_mode_name(EbarMode mode) {
  return mode == EbarMode::table ? "table" : "text";
}

PayoffAveraging parse_averaging(const std::string& s) {
  if (s == "population_weighted" || s == "population") {
    return PayoffAveraging::population_weighted;
  }
  if (s == "uniform_over_types" || s == "uniform") return PayoffAveraging::uniform_over_types;
  throw std::invalid_argument("bad payoff averaging mode: " + s);
}

UpdateTiming parse_timing(const std::string& s) {
  if (s == "synchronous") return UpdateTiming::synchronous;
  if (s == "sequential") return UpdateTiming::sequential;
  throw std::invalid_argument("bad update timing: " + s);
}

EbarMode parse_ebar_mode(const std::string& s) {
  if (s == "table") return EbarMode::table;
  if (s == "text") return EbarMode::text;
  throw std::invalid_argument("bad ebar mode: " + s);
}

Role parse_role(const std::string& s) {
  if (s == "author" || s == "authors") return Role::author;
  if (s == "reviewer" || s == "reviewers") return Role::reviewer;
  throw std::invalid_argument("bad role: " + s);
}

namespace {

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* k : known) {
      if (key == k) {
        ok = true;
        break;
      }
    }
    if (!ok) throw std::invalid_argument("unknown config key '" + key + "' in " + where);
  }
}

template <typename T>
void maybe(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void parse_game(const json& j, ToolConfig& cfg) {
  reject_unknown_keys(j, {"alpha", "beta", "epsilon", "delta", "mu", "ebar", "ebar_mode"},
                      "game");
  GameParams& g = cfg.run.game;
  maybe(j, "alpha", g.alpha);
  maybe(j, "beta", g.beta);
  maybe(j, "epsilon", g.epsilon);
  maybe(j, "delta", g.delta);
  maybe(j, "mu", g.mu);
  if (j.contains("ebar_mode")) cfg.ebar_mode = parse_ebar_mode(j.at("ebar_mode"));
  cfg.run.game.ebar = ebar_value(cfg.ebar_mode, cfg.run.space);
  if (j.contains("ebar")) g.ebar = j.at("ebar").get<double>();  // explicit override
}

void parse_revision(const json& j, RevisionConfig& r) {
  reject_unknown_keys(j,
                      {"prob_revision", "n_candidates", "eta", "prob_mutation",
                       "payoff_averaging", "update_timing"},
                      "revision");
  maybe(j, "prob_revision", r.prob_revision);
  maybe(j, "n_candidates", r.n_candidates);
  maybe(j, "eta", r.eta);
  maybe(j, "prob_mutation", r.prob_mutation);
  if (j.contains("payoff_averaging")) {
    r.payoff_averaging = parse_averaging(j.at("payoff_averaging"));
  }
  if (j.contains("update_timing")) r.update_timing = parse_timing(j.at("update_timing"));
}

void parse_run(const json& j, RunConfig& r) {
  reject_unknown_keys(j, {"rounds", "seed", "record_every", "population_size"}, "run");
  maybe(j, "rounds", r.rounds);
  maybe(j, "seed", r.seed);
  maybe(j, "record_every", r.record_every);
  maybe(j, "population_size", r.population_size);
}

void parse_sweep(const json& j, ToolConfig& cfg) {
  reject_unknown_keys(j, {"epsilons", "deltas", "mus", "seeds", "parallelism"}, "sweep");
  maybe(j, "epsilons", cfg.sweep.epsilons);
  maybe(j, "deltas", cfg.sweep.deltas);
  maybe(j, "mus", cfg.sweep.mus);
  maybe(j, "seeds", cfg.sweep.seeds);
  maybe(j, "parallelism", cfg.parallelism);
}

}  // namespace

ToolConfig parse_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + ex.what());
  }
  ToolConfig cfg = default_config();
  reject_unknown_keys(j, {"game", "revision", "run", "sweep"}, "config root");
  if (j.contains("game")) parse_game(j.at("game"), cfg);
  if (j.contains("revision")) parse_revision(j.at("revision"), cfg.run.revision);
  if (j.contains("run")) parse_run(j.at("run"), cfg.run);
  if (j.contains("sweep")) parse_sweep(j.at("sweep"), cfg);
  cfg.sweep.base = cfg.run;
  return cfg;
}

ToolConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_json(buffer.str());
}

std::string config_to_json(const ToolConfig& cfg) {
  json j;
  const GameParams& g = cfg.run.game;
  j["game"] = {{"alpha", g.alpha},       {"beta", g.beta}, {"epsilon", g.epsilon},
               {"delta", g.delta},       {"mu", g.mu},     {"ebar", g.ebar},
               {"ebar_mode", ebar_mode_name(cfg.ebar_mode)}};
  const RevisionConfig& r = cfg.run.revision;
  j["revision"] = {{"prob_revision", r.prob_revision},
                   {"n_candidates", r.n_candidates},
                   {"eta", r.eta},
                   {"prob_mutation", r.prob_mutation},
                   {"payoff_averaging", averaging_name(r.payoff_averaging)},
                   {"update_timing", timing_name(r.update_timing)}};
  j["run"] = {{"rounds", cfg.run.rounds},
              {"seed", cfg.run.seed},
              {"record_every", cfg.run.record_every},
              {"population_size", cfg.run.population_size}};
  j["sweep"] = {{"epsilons", cfg.sweep.epsilons},
                {"deltas", cfg.sweep.deltas},
                {"mus", cfg.sweep.mus},
                {"seeds", cfg.sweep.seeds},
                {"parallelism", cfg.parallelism}};
  return j.dump(2);
}

}  // namespace prsim
