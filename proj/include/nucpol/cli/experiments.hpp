// Experiment catalogue and the config-driven runner behind the command line.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nucpol/cli/config.hpp"
#include "nucpol/cli/output.hpp"

namespace nucpol::cli {

struct ExperimentInfo {
    std::string name;
    std::string figure;
    std::string description;
};

// The eight experiments, in listing order.
const std::vector<ExperimentInfo>& experiments();

// One line per experiment: "<name> → <figure>  <description>".
std::string list_experiments();

// Runs `name` against the config, writing artifacts through ctx. Throws
// ConfigError for schema problems and nucpol::Error for numerical ones.
void run_experiment(const std::string& name, const Config& cfg, RunContext& ctx);

struct RunOptions {
    std::string out_dir = ".";
    std::optional<std::size_t> jobs;
    bool verbose = false;
};

// Full run: load config, check the experiment and unit, run, write the
// manifest. `expected` is the subcommand name, empty for `run`. Returns the
// process exit status (0 ok, 2 configuration error, 3 numerical failure,
// 1 anything else) after printing diagnostics to stderr.
int run_from_config(const std::string& config_path, const std::string& expected, const RunOptions& opts);

inline constexpr const char* kVersion = NUCPOL_VERSION;

} // namespace nucpol::cli
