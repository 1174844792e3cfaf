#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lognls/cli/scenario.hpp"

namespace lognls::cli {

enum ExitCode : int { exit_ok = 0, exit_invariant = 1, exit_config = 2, exit_runtime = 3 };

struct CommandOptions {
    std::optional<std::filesystem::path> config{};
    std::optional<std::filesystem::path> out{};
    unsigned jobs = 0;  // 0: hardware concurrency
    std::vector<std::string> overrides{};
};

/// --out, then $LOGNLS_OUT, then the scenario's `outputs`.
std::filesystem::path resolve_output_dir(const Scenario& sc, const std::optional<std::filesystem::path>& out_flag);

int cmd_simulate(const Scenario& sc, const std::filesystem::path& dir, std::ostream& log);
int cmd_sweep(const Scenario& sc, const std::filesystem::path& dir, unsigned jobs, std::ostream& log);
int cmd_spectrum(const Scenario& sc, const std::filesystem::path& dir, std::ostream& log);
int cmd_minimize(const Scenario& sc, const std::filesystem::path& dir, std::ostream& log);
int cmd_selftest(const Scenario& sc, const std::filesystem::path& dir, std::ostream& log);

/// Load the scenario, dispatch, and map failures to exit codes. Errors are
/// reported on `err` as one line of JSON.
int run_command(std::string_view command, const CommandOptions& opts, std::ostream& log, std::ostream& err);

} // namespace lognls::cli
