#ifndef PRSIM_TOOLS_COMMANDS_HPP
#define PRSIM_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <string>

#include "prsim/config.hpp"

namespace prsim::cli {

// Each command returns a process exit code: 0 on success, 1 on any error.
// Output files are written atomically; human-readable output goes to `out`,
// diagnostics to `err`.

int cmd_matrix(const ToolConfig& cfg, const std::string& format,
               const std::string& out_path, std::ostream& out, std::ostream& err);

int cmd_nash(const ToolConfig& cfg, double tolerance, const std::string& format,
             const std::string& out_path, std::ostream& out, std::ostream& err);

int cmd_simulate(const ToolConfig& cfg, const std::string& out_dir, bool emit_svg,
                 std::ostream& out, std::ostream& err);

int cmd_sweep(const ToolConfig& cfg, const std::string& out_dir, std::ostream& out,
              std::ostream& err);

int cmd_report(const std::string& in_dir, const std::string& role_filter,
               const std::string& window_filter, const std::string& format,
               const std::string& out_dir, std::ostream& out, std::ostream& err);

}  // namespace prsim::cli

#endif
