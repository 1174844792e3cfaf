#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lognls/cli/commands.hpp"
#include "lognls/cli/output.hpp"

int main(int argc, char** argv) {
    using namespace lognls::cli;

    CLI::App app{"Semiclassical soliton dynamics of the logarithmic NLS"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);

    CommandOptions opts;
    std::string config, out;
    const std::vector<std::pair<const char*, const char*>> commands{
        {"simulate", "propagate one scenario and write diagnostics, tracking and summary"},
        {"sweep", "eps-scaling study over eps_list"},
        {"spectrum", "eigenvalues of the linearized operators at N"},
        {"minimize", "mass-constrained energy minimization"},
        {"selftest", "run every module's invariant suite"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config, "scenario file (TOML)")->check(CLI::ExistingFile);
        sub->add_option("--out", out, "output directory (overrides LOGNLS_OUT and the scenario)");
        sub->add_option("--jobs", opts.jobs, "worker threads for sweep (0: all cores)");
        sub->add_option("overrides", opts.overrides, "key=value overrides");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }
    if (!config.empty()) opts.config = config;
    if (!out.empty()) opts.out = out;
    return run_command(app.get_subcommands().front()->get_name(), opts, std::cout, std::cerr);
}
