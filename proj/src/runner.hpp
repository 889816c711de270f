#pragma once

#include <string>
#include <vector>

namespace eh {

struct RunResult {
    int exit_code = 0; // 0 all checks pass, 1 config/usage error, 2 math failure
    std::string report_json;
};

/// Executes a named command ("validate-phi", "check-counterexample", "solve",
/// "probe-harnack", "estimate-holder", "global-harnack", "min-principle",
/// "all") with a JSON config. When config["out"] is set, writes the report,
/// CSV/SVG artifacts, and a manifest with content hashes under that
/// directory. Identical config (and seed) produces byte-identical outputs.
RunResult run_command(const std::string& name, const std::string& config_json);

const std::vector<std::string>& command_names();

} // namespace eh
