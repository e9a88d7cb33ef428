#pragma once

#include "dbb/algebra.hpp"
#include "dbb/graph.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace dbb {

/// Dense all-pairs closure lengths, row-major, with kUnreachable for pairs
/// that no directed path connects.
class ClosureResult {
public:
    ClosureResult() = default;
    ClosureResult(std::string algebra, std::size_t n)
        : algebra_(std::move(algebra)), n_(n), dist_(n * n, kUnreachable) {}

    const std::string& algebra() const noexcept { return algebra_; }
    std::size_t size() const noexcept { return n_; }

    double at(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }
    double& at(std::size_t i, std::size_t j) { return dist_[i * n_ + j]; }
    bool reachable(std::size_t i, std::size_t j) const { return at(i, j) != kUnreachable; }

    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(dist_).subspan(i * n_, n_);
    }
    std::span<double> row(std::size_t i) { return std::span<double>(dist_).subspan(i * n_, n_); }
    std::span<const double> data() const noexcept { return dist_; }

    /// Largest hop count of the optimal paths found. The distance product
    /// reports the exact iterations-to-fixpoint; the label-setting engine
    /// reports the hop count of the paths it settled, an upper bound on it.
    std::size_t kappa = 0;

    bool operator==(const ClosureResult& other) const {
        return n_ == other.n_ && dist_ == other.dist_;
    }

private:
    std::string algebra_;
    std::size_t n_ = 0;
    std::vector<double> dist_;
};

struct SourceRow {
    std::vector<double> length;
    std::size_t max_hops = 0;
};

/// Generalized label-setting search from one source. Requires distance
/// semantics; lengths follow the algebra's extend operation.
std::vector<double> closure_sssp(const WeightedDigraph& g, const PathAlgebra& alg, NodeIndex source);
SourceRow closure_sssp_row(const WeightedDigraph& g, const PathAlgebra& alg, NodeIndex source);

/// 0 selects the default worker count (DBB_THREADS, else hardware concurrency).
std::size_t resolve_threads(std::size_t requested);

/// Calls `fn(source)` for every node on `threads` workers. Each source is
/// visited exactly once; callers must write only to per-source state.
void for_each_source(std::size_t n, std::size_t threads, const std::function<void(NodeIndex)>& fn);

/// All-pairs closure from one label-setting search per source. Output is
/// bit-identical for any worker count.
ClosureResult closure_apsp(const WeightedDigraph& g, const PathAlgebra& alg, std::size_t threads = 1);

/// Repeated (min, extend) distance products to the fixpoint. Cubic per
/// iteration; the independent reference for closure_apsp.
ClosureResult closure_distance_product(const WeightedDigraph& g, const PathAlgebra& alg);

struct ProximityClosure {
    std::size_t n = 0;
    std::vector<double> prox;  // row-major, 0 for unrelated pairs
    std::size_t kappa = 0;

    double at(std::size_t i, std::size_t j) const { return prox[i * n + j]; }
};

/// Max-norm transitive closure of a proximity graph; diagonal is 1.
ProximityClosure transitive_closure_proximity(const WeightedDigraph& g, const ProximityAlgebra& palg);

/// Graph whose edges are the finite off-diagonal closure entries.
WeightedDigraph closure_graph(const WeightedDigraph& g, const ClosureResult& closure);

} // namespace dbb
