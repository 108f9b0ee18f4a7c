#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "balab/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"balayage-lab: numerical audits for zero sets of weighted holomorphic spaces"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = "out";
    bool strict = false;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int nodes = 0;

    CLI::App* run = app.add_subcommand("run", "execute a scenario file");
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--out", out_dir, "output directory for report.json and CSV traces");
    run->add_flag("--strict", strict, "exit 2 when any audit verdict is diverging");
    run->add_option("--seed", seed, "override the scenario seed")->each([&](const std::string&) {
        seed_set = true;
    });
    run->add_option("--nodes", nodes, "override the angular node count");

    CLI11_PARSE(app, argc, argv);

    balab::RunOverrides overrides;
    overrides.strict = strict;
    if (seed_set) overrides.seed = seed;
    if (nodes > 0) overrides.nodes = nodes;
    return balab::run_scenario_file(scenario_path, out_dir, overrides);
}
