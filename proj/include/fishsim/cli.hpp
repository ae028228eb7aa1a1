#ifndef FISHSIM_CLI_HPP
#define FISHSIM_CLI_HPP

#include "fishsim/config.hpp"

#include <iostream>
#include <string>

namespace fishsim {

struct CommandOptions {
    /// Concurrency bound for sweep cells and quadrature grids; 0 = runtime default.
    int jobs = 0;
    /// Escalate unknown config keys and unmet preconditions from warnings to errors.
    bool strict = false;
    /// Also write the downsampled 1000-point plot CSV (simulate, periodic).
    bool plot = false;
};

/** Runs one subcommand (simulate | check | periodic | converge | sweep) over
 * a resolved config. Output files land in out_dir (created if missing),
 * always including the resolved-config sidecar; diagnostics and warnings go
 * only to diag, never into the CSV files.
 *
 * Returns the process exit code: 0 success, 1 input or configuration error,
 * 2 runtime error (blow-up/overflow). */
int run_command(const std::string& command, const ExperimentConfig& cfg,
                const std::string& out_dir, const CommandOptions& opts = {},
                std::ostream& diag = std::cerr);

/// Argument parsing plus config loading around run_command.
int run_cli(int argc, const char* const* argv);

} // namespace fishsim

#endif
