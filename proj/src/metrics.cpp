#include "dbb/metrics.hpp"

#include "dbb/error.hpp"

#include <cmath>
#include <cstdio>

namespace dbb {

double density(std::size_t nodes, std::size_t ordered_edges) {
    if (nodes < 2) {
        throw Error(ErrorCode::TooFewNodes, "density needs at least two nodes");
    }
    const double n = static_cast<double>(nodes);
    return static_cast<double>(ordered_edges) / (n * (n - 1.0));
}

// Undirected graphs store both orientations, so pairs / (n (n - 1) / 2) is
// the same quotient.
double density(const WeightedDigraph& g) { return density(g.node_count(), g.edge_count()); }

double tau(const Backbone& backbone, const WeightedDigraph& g) {
    if (g.edge_count() == 0) {
        return 1.0;
    }
    return static_cast<double>(backbone.triangular_count()) / static_cast<double>(g.edge_count());
}

std::optional<double> ratio_percent(double tau_ultrametric, double tau_metric) {
    if (tau_metric == 0.0) {
        return std::nullopt;
    }
    return 100.0 * tau_ultrametric / tau_metric;
}

double round_to(double value, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::round(value * scale) / scale;
}

double round_significant(double value, int digits) {
    if (value == 0.0 || !std::isfinite(value)) {
        return value;
    }
    const int magnitude = static_cast<int>(std::floor(std::log10(std::abs(value))));
    return round_to(value, digits - 1 - magnitude);
}

const MeasureSummary* BackboneReport::find(const std::string& name) const {
    for (const auto& m : measures) {
        if (m.name == name) {
            return &m;
        }
    }
    return nullptr;
}

BackboneReport report(const WeightedDigraph& g, std::span<const Backbone> backbones) {
    BackboneReport r;
    r.nodes = g.node_count();
    r.edges = g.edge_count();
    if (r.nodes >= 2) {
        r.density = density(g);
    }
    r.directed = g.directed();
    r.zero_length_edges = g.zero_length_edge_count();
    for (const auto& b : backbones) {
        if (b.classification.size() != g.edge_count()) {
            throw Error(ErrorCode::ClosureMismatch, "backbone '" + b.algebra + "' was not extracted from this graph");
        }
        const double t = tau(b, g);
        r.measures.push_back({b.algebra, t, 1.0 - t, b.triangular_count()});
    }
    const auto* m = r.find("metric");
    const auto* u = r.find("ultrametric");
    if (m != nullptr && u != nullptr && m->tau > 0.0) {
        r.ratio_u_over_m = u->tau / m->tau;
    }
    return r;
}

std::string format_table_row(const BackboneReport& r) {
    auto percent = [](const MeasureSummary* m) {
        if (m == nullptr) {
            return std::string("-");
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", 100.0 * m->tau);
        return std::string(buf);
    };
    char density_buf[32] = "-";
    if (r.density) {
        std::snprintf(density_buf, sizeof density_buf, "%.3g", *r.density);
    }
    char ratio_buf[32] = "-";
    if (r.ratio_u_over_m) {
        std::snprintf(ratio_buf, sizeof ratio_buf, "%.2f", 100.0 * *r.ratio_u_over_m);
    }
    std::string row = std::to_string(r.nodes) + "\t" + std::to_string(r.edges) + "\t" + density_buf;
    row += "\t" + percent(r.find("metric")) + "\t" + percent(r.find("ultrametric")) + "\t" + ratio_buf;
    return row;
}

} // namespace dbb
