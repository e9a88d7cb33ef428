#include "dbb/backbone.hpp"

#include "dbb/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace dbb {

std::string_view to_string(EdgeClass c) {
    return c == EdgeClass::Triangular ? "triangular" : "semi-triangular";
}

bool is_triangular(double weight, double closure_length, double tol) noexcept {
    return std::abs(weight - closure_length) <= tol * std::max(1.0, weight);
}

namespace {

void require_distance(const WeightedDigraph& g) {
    if (g.semantics() != Semantics::Distance) {
        throw Error(ErrorCode::WrongSemantics, "backbones are defined on distance graphs");
    }
}

std::size_t edge_position(const WeightedDigraph& g, NodeIndex s, NodeIndex t) {
    auto edges = g.edges();
    auto it = std::lower_bound(edges.begin(), edges.end(), std::pair(s, t),
                               [](const Edge& e, std::pair<NodeIndex, NodeIndex> key) {
                                   return std::pair(e.source, e.target) < key;
                               });
    return static_cast<std::size_t>(it - edges.begin());
}

// `closure_lengths[k]` is the closure length of g.edges()[k] in its own
// orientation. An undirected pair is triangular only if both orientations are.
Backbone assemble(const WeightedDigraph& g, std::string algebra, std::vector<double> closure_lengths,
                  double tol) {
    auto edges = g.edges();
    if (!g.directed()) {
        std::vector<double> merged(closure_lengths.size());
        for (std::size_t k = 0; k < edges.size(); ++k) {
            const auto back = edge_position(g, edges[k].target, edges[k].source);
            merged[k] = std::min(closure_lengths[k], closure_lengths[back]);
        }
        closure_lengths = std::move(merged);
    }

    Backbone out;
    out.algebra = std::move(algebra);
    out.tolerance = tol;
    out.classification.reserve(edges.size());
    std::vector<Edge> kept;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const auto& e = edges[k];
        const double closed = closure_lengths[k];
        if (closed > e.weight && !is_triangular(e.weight, closed, tol)) {
            throw Error(ErrorCode::ClosureMismatch,
                        "closure lengthens edge (" + g.label(e.source) + ", " + g.label(e.target) +
                            "); it was not computed from this graph");
        }
        const auto cls = is_triangular(e.weight, closed, tol) ? EdgeClass::Triangular
                                                              : EdgeClass::SemiTriangular;
        out.classification.push_back({e.source, e.target, e.weight, cls, closed});
        if (cls == EdgeClass::Triangular) {
            kept.push_back(e);
        }
    }
    out.subgraph = WeightedDigraph(g.labels(), std::move(kept), Semantics::Distance, g.directedness());
    return out;
}

bool same_length(double a, double b, double tol) {
    if (a == b) {
        return true;
    }
    if (std::isinf(a) || std::isinf(b)) {
        return false;
    }
    return std::abs(a - b) <= tol * std::max({1.0, a, b});
}

} // namespace

Backbone extract_backbone(const WeightedDigraph& g, const ClosureResult& closure, double tol) {
    require_distance(g);
    if (closure.size() != g.node_count()) {
        throw Error(ErrorCode::ClosureMismatch,
                    "closure covers " + std::to_string(closure.size()) + " nodes, graph has " +
                        std::to_string(g.node_count()));
    }
    std::vector<double> lengths;
    lengths.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
        lengths.push_back(closure.at(e.source, e.target));
    }
    return assemble(g, closure.algebra(), std::move(lengths), tol);
}

Backbone extract_backbone(const WeightedDigraph& g, const PathAlgebra& alg, double tol,
                          std::size_t threads) {
    require_distance(g);
    const std::size_t n = g.node_count();
    std::vector<std::size_t> first_edge(n + 1, g.edge_count());
    for (std::size_t s = 0; s < n; ++s) {
        first_edge[s] = edge_position(g, static_cast<NodeIndex>(s), 0);
    }

    std::vector<double> lengths(g.edge_count(), kUnreachable);
    for_each_source(n, threads, [&](NodeIndex s) {
        if (g.out_arcs(s).empty()) {
            return;
        }
        const auto row = closure_sssp(g, alg, s);
        std::size_t k = first_edge[s];
        for (const Arc& arc : g.out_arcs(s)) {
            lengths[k++] = row[arc.target];
        }
    });
    return assemble(g, alg.name(), std::move(lengths), tol);
}

SufficiencyCheck verify_backbone_sufficiency(const WeightedDigraph& g, const WeightedDigraph& backbone,
                                             const PathAlgebra& alg, double tol, std::size_t threads) {
    require_distance(g);
    require_distance(backbone);
    const std::size_t n = g.node_count();
    if (backbone.node_count() != n) {
        throw Error(ErrorCode::ClosureMismatch, "backbone and graph have different node sets");
    }

    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> first_bad(n, kNone);
    std::vector<std::pair<double, double>> bad_lengths(n);
    for_each_source(n, threads, [&](NodeIndex s) {
        const auto full = closure_sssp(g, alg, s);
        const auto reduced = closure_sssp(backbone, alg, s);
        for (std::size_t j = 0; j < n; ++j) {
            if (!same_length(full[j], reduced[j], tol)) {
                first_bad[s] = j;
                bad_lengths[s] = {full[j], reduced[j]};
                return;
            }
        }
    });

    SufficiencyCheck out;
    for (std::size_t s = 0; s < n; ++s) {
        if (first_bad[s] != kNone) {
            out.sufficient = false;
            out.source = static_cast<NodeIndex>(s);
            out.target = static_cast<NodeIndex>(first_bad[s]);
            out.graph_length = bad_lengths[s].first;
            out.backbone_length = bad_lengths[s].second;
            break;
        }
    }
    return out;
}

SufficiencyCheck verify_backbone_sufficiency(const WeightedDigraph& g, const Backbone& backbone,
                                             const PathAlgebra& alg, std::size_t threads) {
    return verify_backbone_sufficiency(g, backbone.subgraph, alg, backbone.tolerance, threads);
}

NodeIndex semi_triangular_witness(const WeightedDigraph& g, const ClosureResult& closure,
                                  const PathAlgebra& alg, NodeIndex source, NodeIndex target,
                                  double tol) {
    if (closure.size() != g.node_count()) {
        throw Error(ErrorCode::ClosureMismatch, "closure size does not match graph");
    }
    const auto weight = g.weight(source, target);
    if (!weight) {
        throw Error(ErrorCode::NotSemiTriangular, "no edge between the given nodes");
    }
    const double direct = closure.at(source, target);
    if (is_triangular(*weight, direct, tol)) {
        throw Error(ErrorCode::NotSemiTriangular,
                    "edge (" + g.label(source) + ", " + g.label(target) + ") is triangular");
    }
    const double bound = direct + tol * std::max(1.0, direct);
    for (std::size_t k = 0; k < closure.size(); ++k) {
        if (k == source || k == target) {
            continue;
        }
        if (alg.extend(closure.at(source, k), closure.at(k, target)) <= bound) {
            return static_cast<NodeIndex>(k);
        }
    }
    throw Error(ErrorCode::ClosureMismatch, "no intermediate node realises the closure length");
}

} // namespace dbb
