#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nds/paperbench.hpp"
#include "nds/sensitivity.hpp"
#include "nds/serialize.hpp"

namespace nds {

struct AttachingSpec {
    Region target;
    std::vector<Point> probe_points;
};

struct HyperspaceSpec {
    std::vector<FiniteSubset> centers;
    double radius = 0.0;
    std::size_t max_cardinality = kMaxHyperspaceCardinality;
};

struct ExperimentConfig {
    NamedSystem system;
    FamilySpec family = InfiniteFamily{};
    std::vector<double> deltas;
    int horizon = 0;
    int resolution = 0;
    std::vector<Region> cover;
    std::vector<ProbeMode> modes;
    std::filesystem::path output_dir = "out";
    std::optional<AttachingSpec> attaching;
    std::optional<HyperspaceSpec> hyperspace;
};

/// Unset fields fall back to the system's recommended parameters.
/// Throws ConfigError on malformed input and UnknownSystem for an unregistered name.
ExperimentConfig parse_config(const Json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Family probed in a given mode: nonempty for plain sensitivity, the configured
/// family when it matches the mode, otherwise the mode's default family.
FamilySpec family_for(ProbeMode mode, const FamilySpec& configured);

struct OutputFile {
    std::string name;
    std::string content;
};

struct ExperimentResult {
    Json report;
    std::vector<OutputFile> files;  ///< report.json first, then per-region CSVs, then plotdata.tsv
};

ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes each file to a temporary name in `dir` and renames it into place.
void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

} // namespace nds
