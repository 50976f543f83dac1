#ifndef FDLAB_CLI_COMMANDS_HPP
#define FDLAB_CLI_COMMANDS_HPP

#include <string>
#include <vector>

#include "fdlab/cli/config.hpp"

namespace fdlab::cli {

struct CliOptions {
    std::string config_path;
    std::string out_dir = ".";
    int threads = 1;
    bool verbose = false;
};

int cmd_greens(const RunConfig& cfg, const CliOptions& opts);
int cmd_solve_b(const RunConfig& cfg, const CliOptions& opts);
int cmd_ansatz(const RunConfig& cfg, const CliOptions& opts);
int cmd_simulate(const RunConfig& cfg, const CliOptions& opts);
int cmd_fit(const RunConfig& cfg, const CliOptions& opts);
int cmd_check(const RunConfig& cfg, const CliOptions& opts);

// full argv-style entry point (used by main and the CLI tests); errors
// are printed as JSON objects on stderr and mapped to exit codes
int run_cli(const std::vector<std::string>& args);

}  // namespace fdlab::cli

#endif
