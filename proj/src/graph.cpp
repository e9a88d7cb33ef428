#include "dbb/graph.hpp"

#include "dbb/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

namespace dbb {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::ProximityOutOfRange: return "ProximityOutOfRange";
    case ErrorCode::NonFiniteWeight: return "NonFiniteWeight";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::AsymmetricUndirected: return "AsymmetricUndirected";
    case ErrorCode::WrongSemantics: return "WrongSemantics";
    case ErrorCode::TooFewNodes: return "TooFewNodes";
    case ErrorCode::ClosureMismatch: return "ClosureMismatch";
    case ErrorCode::NotSemiTriangular: return "NotSemiTriangular";
    case ErrorCode::UnknownMeasure: return "UnknownMeasure";
    case ErrorCode::UnlawfulAlgebra: return "UnlawfulAlgebra";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

std::string_view to_string(Semantics s) {
    return s == Semantics::Proximity ? "proximity" : "distance";
}

std::string_view to_string(Directedness d) {
    return d == Directedness::Directed ? "directed" : "undirected";
}

namespace {

std::string describe(const std::string& s, const std::string& t, std::size_t line) {
    std::string where = "edge (" + s + ", " + t + ")";
    if (line != 0) {
        where += " at line " + std::to_string(line);
    }
    return where;
}

void check_weight(double w, Semantics semantics, const std::string& where) {
    if (std::isnan(w) || std::isinf(w)) {
        throw Error(ErrorCode::NonFiniteWeight, where + ": weight must be finite");
    }
    if (semantics == Semantics::Distance) {
        if (w < 0.0) {
            throw Error(ErrorCode::NegativeWeight, where + ": negative distance " + std::to_string(w));
        }
    } else if (!(w > 0.0 && w <= 1.0)) {
        throw Error(ErrorCode::ProximityOutOfRange,
                    where + ": proximity " + std::to_string(w) + " outside (0, 1]");
    }
}

} // namespace

WeightedDigraph::WeightedDigraph(std::vector<std::string> labels, std::vector<Edge> edges,
                                 Semantics semantics, Directedness directedness)
    : labels_(std::move(labels)), edges_(std::move(edges)), semantics_(semantics),
      directedness_(directedness) {
    index_.reserve(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (!index_.emplace(labels_[i], static_cast<NodeIndex>(i)).second) {
            throw Error(ErrorCode::InvalidInput, "duplicate node label '" + labels_[i] + "'");
        }
    }

    const auto n = labels_.size();
    for (const auto& e : edges_) {
        if (e.source >= n || e.target >= n) {
            throw Error(ErrorCode::InvalidInput, "edge endpoint out of range");
        }
        if (e.source == e.target) {
            throw Error(ErrorCode::InvalidInput, "self-loop on '" + labels_[e.source] + "'");
        }
        check_weight(e.weight, semantics_, describe(labels_[e.source], labels_[e.target], 0));
    }

    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return std::pair(a.source, a.target) < std::pair(b.source, b.target);
    });
    for (std::size_t k = 1; k < edges_.size(); ++k) {
        if (edges_[k].source == edges_[k - 1].source && edges_[k].target == edges_[k - 1].target) {
            throw Error(ErrorCode::DuplicateEdge,
                        "duplicate " + describe(labels_[edges_[k].source], labels_[edges_[k].target], 0));
        }
    }

    offsets_.assign(n + 1, 0);
    for (const auto& e : edges_) {
        ++offsets_[e.source + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
        offsets_[i + 1] += offsets_[i];
    }
    arcs_.reserve(edges_.size());
    for (const auto& e : edges_) {
        arcs_.push_back({e.target, e.weight});
    }

    if (directedness_ == Directedness::Undirected) {
        for (const auto& e : edges_) {
            auto back = weight(e.target, e.source);
            if (!back || *back != e.weight) {
                throw Error(ErrorCode::AsymmetricUndirected,
                            "undirected graph lacks matching reverse of " +
                                describe(labels_[e.source], labels_[e.target], 0));
            }
        }
    }
}

std::size_t WeightedDigraph::pair_count() const noexcept {
    return directed() ? edges_.size() : edges_.size() / 2;
}

std::optional<NodeIndex> WeightedDigraph::find_node(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<Node> WeightedDigraph::nodes() const {
    std::vector<Node> out;
    out.reserve(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        out.push_back({static_cast<NodeIndex>(i), labels_[i]});
    }
    return out;
}

std::span<const Arc> WeightedDigraph::out_arcs(NodeIndex i) const {
    if (offsets_.empty()) {
        return {};
    }
    return std::span<const Arc>(arcs_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

std::optional<double> WeightedDigraph::weight(NodeIndex source, NodeIndex target) const {
    if (source >= node_count()) {
        return std::nullopt;
    }
    auto arcs = out_arcs(source);
    auto it = std::lower_bound(arcs.begin(), arcs.end(), target,
                               [](const Arc& a, NodeIndex t) { return a.target < t; });
    if (it == arcs.end() || it->target != target) {
        return std::nullopt;
    }
    return it->weight;
}

std::size_t WeightedDigraph::zero_length_edge_count() const noexcept {
    const double perfect = semantics_ == Semantics::Distance ? 0.0 : 1.0;
    return static_cast<std::size_t>(std::count_if(
        edges_.begin(), edges_.end(), [&](const Edge& e) { return e.weight == perfect; }));
}

GraphBuild build_graph(std::span<const EdgeTriple> triples, Semantics semantics,
                       Directedness directedness) {
    GraphBuild out;
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeIndex> index;
    auto intern = [&](const std::string& label) {
        auto [it, inserted] = index.emplace(label, static_cast<NodeIndex>(labels.size()));
        if (inserted) {
            labels.push_back(label);
        }
        return it->second;
    };

    // (i, j) -> (weight, line) for every ordered entry as listed.
    std::map<std::pair<NodeIndex, NodeIndex>, std::pair<double, std::size_t>> listed;
    for (const auto& t : triples) {
        const NodeIndex s = intern(t.source);
        const NodeIndex d = intern(t.target);
        if (s == d) {
            ++out.self_loops_dropped;
            continue;
        }
        check_weight(t.weight, semantics, describe(t.source, t.target, t.line));
        if (!listed.emplace(std::pair(s, d), std::pair(t.weight, t.line)).second) {
            throw Error(ErrorCode::DuplicateEdge, "duplicate " + describe(t.source, t.target, t.line));
        }
    }

    std::vector<Edge> edges;
    edges.reserve(listed.size() * (directedness == Directedness::Undirected ? 2 : 1));
    for (const auto& [key, value] : listed) {
        const auto [s, d] = key;
        edges.push_back({s, d, value.first});
        if (directedness == Directedness::Undirected) {
            auto reverse = listed.find(std::pair(d, s));
            if (reverse == listed.end()) {
                edges.push_back({d, s, value.first});
            } else if (reverse->second.first != value.first) {
                throw Error(ErrorCode::AsymmetricUndirected,
                            describe(labels[s], labels[d], value.second) + " has weight " +
                                std::to_string(value.first) + " but its reverse has " +
                                std::to_string(reverse->second.first));
            }
        }
    }
    out.graph = WeightedDigraph(std::move(labels), std::move(edges), semantics, directedness);
    return out;
}

double proximity_to_distance(double p) noexcept {
    if (p <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 1.0 / p - 1.0;
}

double distance_to_proximity(double d) noexcept {
    if (std::isinf(d)) {
        return 0.0;
    }
    return 1.0 / (d + 1.0);
}

namespace {

WeightedDigraph remap(const WeightedDigraph& g, Semantics target, double (*map)(double) noexcept) {
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    for (auto& e : edges) {
        e.weight = map(e.weight);
    }
    return WeightedDigraph(g.labels(), std::move(edges), target, g.directedness());
}

} // namespace

WeightedDigraph to_distance(const WeightedDigraph& g) {
    if (g.semantics() != Semantics::Proximity) {
        throw Error(ErrorCode::WrongSemantics, "to_distance expects a proximity graph");
    }
    return remap(g, Semantics::Distance, proximity_to_distance);
}

WeightedDigraph to_proximity(const WeightedDigraph& g) {
    if (g.semantics() != Semantics::Distance) {
        throw Error(ErrorCode::WrongSemantics, "to_proximity expects a distance graph");
    }
    return remap(g, Semantics::Proximity, distance_to_proximity);
}

WeightedDigraph symmetrize(const WeightedDigraph& g, SymmetrizeRule rule) {
    if (!g.directed()) {
        return g;
    }
    std::vector<Edge> edges;
    edges.reserve(g.edge_count() * 2);
    for (const auto& e : g.edges()) {
        const auto back = g.weight(e.target, e.source);
        if (back && e.source > e.target) {
            continue;  // pair already emitted from the lower endpoint
        }
        double w = e.weight;
        if (back) {
            switch (rule) {
            case SymmetrizeRule::Min: w = std::min(e.weight, *back); break;
            case SymmetrizeRule::Max: w = std::max(e.weight, *back); break;
            case SymmetrizeRule::Mean: w = 0.5 * (e.weight + *back); break;
            }
        }
        edges.push_back({e.source, e.target, w});
        edges.push_back({e.target, e.source, w});
    }
    return WeightedDigraph(g.labels(), std::move(edges), g.semantics(), Directedness::Undirected);
}

double asymmetric_fraction(const WeightedDigraph& g) noexcept {
    if (g.edge_count() == 0) {
        return 0.0;
    }
    std::size_t one_way = 0;
    for (const auto& e : g.edges()) {
        if (!g.weight(e.target, e.source)) {
            ++one_way;
        }
    }
    return static_cast<double>(one_way) / static_cast<double>(g.edge_count());
}

} // namespace dbb
