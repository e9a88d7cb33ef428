#pragma once

#include "dbb/backbone.hpp"
#include "dbb/graph.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dbb {

/// Fraction of ordered node pairs realised as edges: edges / (n (n - 1)).
/// Throws Error(TooFewNodes) for n < 2.
double density(std::size_t nodes, std::size_t ordered_edges);
double density(const WeightedDigraph& g);

/// Triangular edges over stored ordered entries; 1 for a graph with no edges.
double tau(const Backbone& backbone, const WeightedDigraph& g);

/// tau_u / tau_m as a percentage, empty when tau_m is 0.
std::optional<double> ratio_percent(double tau_ultrametric, double tau_metric);

double round_to(double value, int decimals);
double round_significant(double value, int digits);

struct MeasureSummary {
    std::string name;
    double tau = 0.0;
    double sigma = 0.0;
    std::size_t backbone_edges = 0;
};

struct BackboneReport {
    std::size_t nodes = 0;
    std::size_t edges = 0;  // ordered entries, i != j
    std::optional<double> density;
    bool directed = true;
    std::size_t zero_length_edges = 0;
    std::vector<MeasureSummary> measures;
    std::optional<double> ratio_u_over_m;  // fraction

    const MeasureSummary* find(const std::string& name) const;
};

BackboneReport report(const WeightedDigraph& g, std::span<const Backbone> backbones);

/// One row in the layout of a published summary table:
/// nodes, edges, density, tau_m %, tau_u %, tau_u/tau_m %.
std::string format_table_row(const BackboneReport& r);

} // namespace dbb
