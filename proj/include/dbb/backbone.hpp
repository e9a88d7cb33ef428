#pragma once

#include "dbb/algebra.hpp"
#include "dbb/closure.hpp"
#include "dbb/graph.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dbb {

inline constexpr double kDefaultTolerance = 1e-9;

enum class EdgeClass { Triangular, SemiTriangular };

std::string_view to_string(EdgeClass c);

struct ClassifiedEdge {
    NodeIndex source;
    NodeIndex target;
    double weight;
    EdgeClass edge_class;
    double closure_length;
};

/// Distance backbone of a graph under one path algebra.
///
/// `subgraph` keeps every node of the input and exactly the triangular edges
/// with their original weights. `classification` lists every input edge in
/// (source, target) order, semi-triangular ones included.
struct Backbone {
    std::string algebra;
    WeightedDigraph subgraph;
    std::vector<ClassifiedEdge> classification;
    double tolerance = kDefaultTolerance;

    std::size_t triangular_count() const noexcept { return subgraph.edge_count(); }
    std::size_t semi_triangular_count() const noexcept {
        return classification.size() - subgraph.edge_count();
    }
};

/// True when `weight` equals `closure_length` up to tol * max(1, weight).
bool is_triangular(double weight, double closure_length, double tol) noexcept;

/// Classifies every edge of `g` against a precomputed closure.
Backbone extract_backbone(const WeightedDigraph& g, const ClosureResult& closure,
                          double tol = kDefaultTolerance);

/// Same classification, computing one closure row per source on the fly so
/// memory stays linear in the node count.
Backbone extract_backbone(const WeightedDigraph& g, const PathAlgebra& alg,
                          double tol = kDefaultTolerance, std::size_t threads = 1);

struct SufficiencyCheck {
    bool sufficient = true;
    NodeIndex source = 0;
    NodeIndex target = 0;
    double graph_length = 0.0;
    double backbone_length = 0.0;
};

/// Recomputes the closure on the backbone alone and compares it entrywise
/// with the closure of `g`. Reports the first differing pair in row order.
SufficiencyCheck verify_backbone_sufficiency(const WeightedDigraph& g, const WeightedDigraph& backbone,
                                             const PathAlgebra& alg, double tol = kDefaultTolerance,
                                             std::size_t threads = 1);
SufficiencyCheck verify_backbone_sufficiency(const WeightedDigraph& g, const Backbone& backbone,
                                             const PathAlgebra& alg, std::size_t threads = 1);

/// Intermediate node k through which a semi-triangular edge is shortcut:
/// extend(d_ik, d_kj) <= d_ij < w_ij in closure lengths. Throws
/// Error(NotSemiTriangular) for triangular or absent edges.
NodeIndex semi_triangular_witness(const WeightedDigraph& g, const ClosureResult& closure,
                                  const PathAlgebra& alg, NodeIndex source, NodeIndex target,
                                  double tol = kDefaultTolerance);

} // namespace dbb
