#pragma once

#include "dbb/backbone.hpp"
#include "dbb/closure.hpp"
#include "dbb/graph.hpp"
#include "dbb/metrics.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace dbb {

enum class EdgeListFormat { Auto, Tsv, Csv };
enum class Normalization { None, Max };

struct EdgeListOptions {
    EdgeListFormat format = EdgeListFormat::Auto;
    Semantics semantics = Semantics::Distance;
    Directedness directedness = Directedness::Directed;
    Normalization normalization = Normalization::None;
};

/// Parses `source, target, weight` rows. Blank lines and lines starting with
/// '#' are skipped; a first row whose weight is not numeric is a header.
/// Errors name the offending line.
std::vector<EdgeTriple> parse_edge_list(std::istream& in, EdgeListFormat format);

/// Divides every weight by the largest one (raw counts to proximities).
void normalize_max(std::vector<EdgeTriple>& triples);

GraphBuild read_edge_list(std::istream& in, const EdgeListOptions& options);
GraphBuild read_edge_list(const std::filesystem::path& path, const EdgeListOptions& options);

/// Writes a tab-separated edge list with a header. Weights use the shortest
/// representation that parses back to the same double. Undirected pairs are
/// written once.
void write_edge_list(std::ostream& out, const WeightedDigraph& g);

/// Finite off-diagonal closure entries as `source, target, closure_length`.
void write_closure_tsv(std::ostream& out, const WeightedDigraph& g, const ClosureResult& closure);

/// One row per input edge: `source, target, weight, class, closure_length`.
void write_classification_tsv(std::ostream& out, const WeightedDigraph& g, const Backbone& backbone);

struct ClassificationRow {
    std::string source;
    std::string target;
    double weight = 0.0;
    EdgeClass edge_class = EdgeClass::Triangular;
    double closure_length = 0.0;
};

std::vector<ClassificationRow> read_classification_tsv(std::istream& in);

nlohmann::ordered_json graph_to_json(const WeightedDigraph& g);
WeightedDigraph graph_from_json(const nlohmann::json& j);

nlohmann::ordered_json report_to_json(const BackboneReport& r);

std::string format_double(double value);

} // namespace dbb
