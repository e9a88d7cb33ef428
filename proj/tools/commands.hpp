#pragma once

#include "dbb/algebra.hpp"
#include "dbb/backbone.hpp"
#include "dbb/io.hpp"
#include "dbb/metrics.hpp"

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace dbb::cli {

enum ExitCode : int { kSuccess = 0, kInputError = 1, kVerificationFailure = 2 };

inline constexpr std::size_t kLargeGraphNodes = 10'000;
// Above this size `verify` skips the cubic distance-product cross-check.
inline constexpr std::size_t kOracleNodeLimit = 400;

struct RunConfig {
    std::filesystem::path input;
    EdgeListFormat format = EdgeListFormat::Auto;
    Semantics semantics = Semantics::Distance;
    Directedness directedness = Directedness::Directed;
    Normalization normalization = Normalization::None;
    std::vector<std::string> measures{"metric", "ultrametric"};
    double tolerance = kDefaultTolerance;
    std::filesystem::path output_dir = "dbb_out";
    std::size_t threads = 0;
    bool force = false;
    bool write_closure = false;
};

/// Throws Error(InvalidInput) for an empty measure list or non-positive tolerance.
void validate(const RunConfig& config, const AlgebraRegistry& registry);

struct PipelineResult {
    WeightedDigraph graph;  // distance semantics
    std::size_t self_loops_dropped = 0;
    std::vector<Backbone> backbones;
    BackboneReport report;
    nlohmann::ordered_json report_json;
};

/// Loads the input, converts proximities to distances and extracts one
/// backbone per configured measure. Writes nothing.
PipelineResult run_pipeline(const RunConfig& config, const AlgebraRegistry& registry);

std::filesystem::path backbone_path(const RunConfig& config, const std::string& measure);
std::filesystem::path classification_path(const RunConfig& config, const std::string& measure);
std::filesystem::path closure_path(const RunConfig& config, const std::string& measure);
std::filesystem::path report_path(const RunConfig& config);

int cmd_backbone(const RunConfig& config, const AlgebraRegistry& registry, std::ostream& out,
                 std::ostream& err);
int cmd_verify(const RunConfig& config, const AlgebraRegistry& registry, std::ostream& out,
               std::ostream& err);
int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err);

nlohmann::ordered_json stats_json(const GraphBuild& build);

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace dbb::cli
