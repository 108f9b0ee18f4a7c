#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "balab/charge.hpp"
#include "balab/geometry.hpp"
#include "balab/products.hpp"
#include "balab/weight.hpp"

namespace balab {

using Json = nlohmann::ordered_json;

// Rounds to 12 significant digits; report numbers pass through this so that
// identical runs serialize byte-for-byte.
double round_sig(double x, int digits = 12);
Json json_number(double x);  // finite -> rounded number, else "inf"/"-inf"/"nan"

// Fully resolved experiment description. Everything needed to rerun the
// experiment is here and is embedded verbatim in every report.
struct Scenario {
    std::string pipeline;  // pj-audit | balayage-audit | classify | averaging-sweep
    std::uint64_t seed = 1;
    Domain domain;
    SetSystem system;
    Weight weight;
    ZeroSequence zeros;
    ClassifyConfig classify;
    int pj_instances = 25;
    int angular_nodes = 256;
    double pj_tolerance = 1e-6;
    // averaging-sweep controls
    std::vector<std::string> averaging_ops = {"circle", "disk", "smooth"};
    int sweep_rings = 6;
    int sweep_angular = 8;
    double sweep_radius_shrink = 0.3;

    Json resolved;  // canonical form embedded in reports
};

Scenario load_scenario(const Json& doc);
Scenario load_scenario_file(const std::filesystem::path& path);

struct CsvArtifact {
    std::string filename;
    std::string content;
};

struct RunOutcome {
    int exit_code = 0;  // 0 ok, 2 diverging under --strict, 1 error
    bool diverging = false;
    Json report;
    std::vector<CsvArtifact> csv;
};

struct RunOverrides {
    bool strict = false;
    std::optional<std::uint64_t> seed;
    std::optional<int> nodes;
};

RunOutcome run_scenario(const Scenario& scenario, const RunOverrides& overrides = {});

// Writes report.json and the CSV traces under out_dir; returns the exit code
// (1 on any error, diagnostics on stderr).
int run_scenario_file(const std::filesystem::path& scenario_path,
                      const std::filesystem::path& out_dir, const RunOverrides& overrides = {});

// format: "json" writes the document, "csv" writes the report's embedded
// trace table; anything else is an error.
void export_report(const Json& report, const std::filesystem::path& path,
                   const std::string& format);

}  // namespace balab
