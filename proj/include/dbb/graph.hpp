#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dbb {

using NodeIndex = std::uint32_t;

enum class Semantics { Proximity, Distance };
enum class Directedness { Directed, Undirected };
enum class SymmetrizeRule { Min, Max, Mean };

std::string_view to_string(Semantics s);
std::string_view to_string(Directedness d);

struct Node {
    NodeIndex index;
    std::string_view label;
};

struct Edge {
    NodeIndex source;
    NodeIndex target;
    double weight;

    bool operator==(const Edge&) const = default;
};

// Out-neighbour entry in the compressed adjacency.
struct Arc {
    NodeIndex target;
    double weight;
};

struct EdgeTriple {
    std::string source;
    std::string target;
    double weight;
    std::size_t line = 0;  // 1-based input line, 0 when not from a file
};

/// Immutable node-labelled weighted digraph with declared weight semantics.
///
/// Edges are stored sparsely in (source, target) order; an absent entry means
/// p = 0 under proximity semantics and d = infinity under distance semantics.
/// Self-loops are never stored. Undirected graphs store both orientations of
/// every pair with equal weight, so all algorithms can treat them as digraphs.
class WeightedDigraph {
public:
    WeightedDigraph() = default;

    /// Validates every invariant and throws dbb::Error on violation. Edges
    /// may arrive in any order.
    WeightedDigraph(std::vector<std::string> labels, std::vector<Edge> edges,
                    Semantics semantics, Directedness directedness);

    std::size_t node_count() const noexcept { return labels_.size(); }
    /// Number of stored ordered (i, j) entries with i != j.
    std::size_t edge_count() const noexcept { return edges_.size(); }
    /// Unordered pairs for undirected graphs; ordered entries otherwise.
    std::size_t pair_count() const noexcept;

    Semantics semantics() const noexcept { return semantics_; }
    Directedness directedness() const noexcept { return directedness_; }
    bool directed() const noexcept { return directedness_ == Directedness::Directed; }

    const std::string& label(NodeIndex i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::optional<NodeIndex> find_node(std::string_view label) const;
    std::vector<Node> nodes() const;

    std::span<const Edge> edges() const noexcept { return edges_; }
    std::span<const Arc> out_arcs(NodeIndex i) const;
    std::optional<double> weight(NodeIndex source, NodeIndex target) const;

    /// Count of stored entries with weight 0 (distance) or 1 (proximity),
    /// i.e. perfect-proximity shortcuts between distinct nodes.
    std::size_t zero_length_edge_count() const noexcept;

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeIndex> index_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<Arc> arcs_;
    Semantics semantics_ = Semantics::Distance;
    Directedness directedness_ = Directedness::Directed;
};

struct GraphBuild {
    WeightedDigraph graph;
    std::size_t self_loops_dropped = 0;
};

/// Builds a graph from labelled triples. Nodes are indexed in order of first
/// appearance. For undirected graphs a pair may be listed once or in both
/// orientations with equal weight.
GraphBuild build_graph(std::span<const EdgeTriple> triples, Semantics semantics,
                       Directedness directedness);

// d = 1/p - 1 and its inverse p = 1/(d + 1). p = 0 maps to infinity.
double proximity_to_distance(double p) noexcept;
double distance_to_proximity(double d) noexcept;

WeightedDigraph to_distance(const WeightedDigraph& g);
WeightedDigraph to_proximity(const WeightedDigraph& g);

/// Undirected graph whose pairs combine the existing orientations with `rule`.
/// Undirected input is returned unchanged.
WeightedDigraph symmetrize(const WeightedDigraph& g, SymmetrizeRule rule);

/// Fraction of stored ordered entries whose reverse entry is absent.
double asymmetric_fraction(const WeightedDigraph& g) noexcept;

} // namespace dbb
