#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "nucpol/cli/experiments.hpp"

int main(int argc, char** argv) {
    using namespace nucpol::cli;

    CLI::App app{"nucpol: nuclear-polariton experiment runner"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    RunOptions opts;
    std::optional<std::size_t> jobs;
    app.add_option("--out", opts.out_dir, "output directory")->capture_default_str();
    app.add_option("--jobs", jobs, "concurrent grid evaluations (default: available cores)")
        ->check(CLI::PositiveNumber);
    app.add_flag("--verbose", opts.verbose, "progress on stderr");

    std::string config_path;
    std::string chosen;

    auto* run = app.add_subcommand("run", "run the experiment named in a config file")->fallthrough();
    run->add_option("config", config_path, "config file")->required();
    run->callback([&] { chosen = "run"; });

    app.add_subcommand("list", "list experiments and the figure each reproduces")->callback([&] { chosen = "list"; });

    for (const auto& e : experiments()) {
        auto* sub = app.add_subcommand(e.name, e.description)->fallthrough();
        sub->add_option("--config", config_path, "config file")->required();
        sub->callback([&chosen, name = e.name] { chosen = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (chosen == "list") {
        std::cout << list_experiments();
        return 0;
    }
    opts.jobs = jobs;
    return run_from_config(config_path, chosen == "run" ? std::string() : chosen, opts);
}
