#include "dbb/closure.hpp"

#include "dbb/error.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

namespace dbb {

namespace {

void require_distance(const WeightedDigraph& g, const char* op) {
    if (g.semantics() != Semantics::Distance) {
        throw Error(ErrorCode::WrongSemantics, std::string(op) + " expects a distance graph");
    }
}

// (length, node) ordering keeps pops deterministic on equal lengths.
using QueueEntry = std::pair<double, NodeIndex>;
using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

} // namespace

SourceRow closure_sssp_row(const WeightedDigraph& g, const PathAlgebra& alg, NodeIndex source) {
    require_distance(g, "closure_sssp");
    const std::size_t n = g.node_count();
    if (source >= n) {
        throw Error(ErrorCode::InvalidInput, "source index out of range");
    }

    SourceRow out;
    out.length.assign(n, kUnreachable);
    std::vector<std::size_t> hops(n, 0);
    std::vector<char> settled(n, 0);

    out.length[source] = 0.0;
    MinQueue queue;
    queue.emplace(0.0, source);
    while (!queue.empty()) {
        const auto [len, u] = queue.top();
        queue.pop();
        if (settled[u] || len != out.length[u]) {
            continue;
        }
        settled[u] = 1;
        out.max_hops = std::max(out.max_hops, hops[u]);
        for (const Arc& arc : g.out_arcs(u)) {
            const NodeIndex v = arc.target;
            if (settled[v]) {
                continue;
            }
            const double candidate = alg.extend(len, arc.weight);
            if (candidate < out.length[v]) {
                out.length[v] = candidate;
                hops[v] = hops[u] + 1;
                queue.emplace(candidate, v);
            } else if (candidate == out.length[v] && hops[u] + 1 < hops[v]) {
                hops[v] = hops[u] + 1;
            }
        }
    }
    return out;
}

std::vector<double> closure_sssp(const WeightedDigraph& g, const PathAlgebra& alg, NodeIndex source) {
    return closure_sssp_row(g, alg, source).length;
}

std::size_t resolve_threads(std::size_t requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("DBB_THREADS")) {
        try {
            const long value = std::stol(env);
            if (value > 0) {
                return static_cast<std::size_t>(value);
            }
        } catch (const std::exception&) {
            // fall through to the hardware default
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void for_each_source(std::size_t n, std::size_t threads, const std::function<void(NodeIndex)>& fn) {
    threads = std::min(resolve_threads(threads), std::max<std::size_t>(n, 1));
    if (threads <= 1) {
        for (std::size_t s = 0; s < n; ++s) {
            fn(static_cast<NodeIndex>(s));
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            workers.emplace_back([&] {
                for (std::size_t s = next++; s < n; s = next++) {
                    try {
                        fn(static_cast<NodeIndex>(s));
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) {
                            failure = std::current_exception();
                        }
                        next = n;
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

ClosureResult closure_apsp(const WeightedDigraph& g, const PathAlgebra& alg, std::size_t threads) {
    require_distance(g, "closure_apsp");
    const std::size_t n = g.node_count();
    ClosureResult result(alg.name(), n);
    std::vector<std::size_t> hops(n, 0);
    for_each_source(n, threads, [&](NodeIndex s) {
        auto row = closure_sssp_row(g, alg, s);
        std::copy(row.length.begin(), row.length.end(), result.row(s).begin());
        hops[s] = row.max_hops;
    });
    result.kappa = n == 0 ? 0 : *std::max_element(hops.begin(), hops.end());
    return result;
}

ClosureResult closure_distance_product(const WeightedDigraph& g, const PathAlgebra& alg) {
    require_distance(g, "closure_distance_product");
    const std::size_t n = g.node_count();

    ClosureResult adjacency(alg.name(), n);
    for (std::size_t i = 0; i < n; ++i) {
        adjacency.at(i, i) = 0.0;
    }
    for (const auto& e : g.edges()) {
        adjacency.at(e.source, e.target) = e.weight;
    }

    // After eta rounds `current` holds the best lengths over paths of at most
    // eta hops; a round that changes nothing is the fixpoint.
    ClosureResult current = adjacency;
    std::size_t eta = g.edge_count() == 0 ? 0 : 1;
    for (std::size_t round = 0; round <= n + 1; ++round) {
        ClosureResult next = current;
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            auto out = next.row(i);
            for (std::size_t k = 0; k < n; ++k) {
                const double first = adjacency.at(i, k);
                if (k == i || first == kUnreachable) {
                    continue;
                }
                auto tail = current.row(k);
                for (std::size_t j = 0; j < n; ++j) {
                    const double candidate = alg.extend(first, tail[j]);
                    if (candidate < out[j]) {
                        out[j] = candidate;
                        changed = true;
                    }
                }
            }
        }
        if (!changed) {
            current.kappa = eta;
            return current;
        }
        current = std::move(next);
        ++eta;
    }
    throw std::logic_error("distance product failed to converge for algebra '" + alg.name() + "'");
}

ProximityClosure transitive_closure_proximity(const WeightedDigraph& g, const ProximityAlgebra& palg) {
    if (g.semantics() != Semantics::Proximity) {
        throw Error(ErrorCode::WrongSemantics, "transitive_closure_proximity expects a proximity graph");
    }
    const std::size_t n = g.node_count();
    ProximityClosure base;
    base.n = n;
    base.prox.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        base.prox[i * n + i] = 1.0;
    }
    for (const auto& e : g.edges()) {
        base.prox[e.source * n + e.target] = e.weight;
    }

    ProximityClosure current = base;
    std::size_t eta = g.edge_count() == 0 ? 0 : 1;
    for (std::size_t round = 0; round <= n + 1; ++round) {
        ProximityClosure next = current;
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                const double first = base.at(i, k);
                if (k == i || first == 0.0) {
                    continue;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const double composed = palg.norm(first, current.at(k, j));
                    double& cell = next.prox[i * n + j];
                    const double joined = palg.conorm(cell, composed);
                    if (joined > cell) {
                        cell = joined;
                        changed = true;
                    }
                }
            }
        }
        if (!changed) {
            current.kappa = eta;
            return current;
        }
        current = std::move(next);
        ++eta;
    }
    throw std::logic_error("proximity closure failed to converge for '" + palg.name + "'");
}

WeightedDigraph closure_graph(const WeightedDigraph& g, const ClosureResult& closure) {
    if (closure.size() != g.node_count()) {
        throw Error(ErrorCode::ClosureMismatch, "closure size does not match graph");
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < closure.size(); ++i) {
        for (std::size_t j = 0; j < closure.size(); ++j) {
            if (i != j && closure.reachable(i, j)) {
                edges.push_back({static_cast<NodeIndex>(i), static_cast<NodeIndex>(j), closure.at(i, j)});
            }
        }
    }
    return WeightedDigraph(g.labels(), std::move(edges), Semantics::Distance, Directedness::Directed);
}

} // namespace dbb
