#ifndef PRSIM_CONFIG_HPP
#define PRSIM_CONFIG_HPP

#include <string>

#include "prsim/sweep.hpp"

namespace prsim {

inline constexpr const char* kToolName = "prsim";
inline constexpr const char* kToolVersion = "0.1.0";

/// Everything the tool needs for one invocation. `run` carries the game,
/// protocol and schedule; `sweep.base` mirrors `run` when sweeping.
struct ToolConfig {
  RunConfig run{};
  EbarMode ebar_mode = EbarMode::table;
  SweepGrid sweep{};
  int parallelism = 1;

  /// Re-resolves run.game.ebar from ebar_mode and the strategy space, and
  /// mirrors run into sweep.base.
  void finalize();
};

ToolConfig default_config();

/// Parses the JSON config file. Absent keys keep their defaults; unknown
/// keys are rejected.
ToolConfig load_config_file(const std::string& path);
ToolConfig parse_config_json(const std::string& text);

/// Full config dump as pretty JSON, reused inside manifests.
std::string config_to_json(const ToolConfig& cfg);

const char* role_name(Role role);
const char* labeling_name(Labeling labeling);
const char* averaging_name(PayoffAveraging mode);
const char* timing_name(UpdateTiming timing);
const char* ebar_mode_name(EbarMode mode);
PayoffAveraging parse_averaging(const std::string& s);
UpdateTiming parse_timing(const std::string& s);
EbarMode parse_ebar_mode(const std::string& s);
Role parse_role(const std::string& s);

}  // namespace prsim

#endif
