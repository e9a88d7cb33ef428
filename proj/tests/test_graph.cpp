#include "dbb/error.hpp"
#include "dbb/graph.hpp"

#include "dbb/algebra.hpp"

#include "support/expect.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dbb;
using dbb::testing::code_of;
using dbb::testing::random_digraph;

namespace {

std::vector<EdgeTriple> triples(std::initializer_list<std::tuple<const char*, const char*, double>> rows) {
    std::vector<EdgeTriple> out;
    for (const auto& [s, t, w] : rows) {
        out.push_back({s, t, w});
    }
    return out;
}

} // namespace

TEST(BuildGraph, DirectedChain) {
    auto t = triples({{"A", "B", 2.0}, {"B", "C", 3.0}});
    auto build = build_graph(t, Semantics::Distance, Directedness::Directed);
    const auto& g = build.graph;
    EXPECT_EQ(g.node_count(), 3u);
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_EQ(g.label(0), "A");
    EXPECT_EQ(g.label(1), "B");
    EXPECT_EQ(g.label(2), "C");
    EXPECT_EQ(g.weight(0, 1), 2.0);
    EXPECT_FALSE(g.weight(1, 0).has_value());
}

TEST(BuildGraph, SymmetricProximityPair) {
    auto t = triples({{"A", "B", 0.5}, {"B", "A", 0.5}});
    const auto g = build_graph(t, Semantics::Proximity, Directedness::Undirected).graph;
    EXPECT_EQ(g.node_count(), 2u);
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_EQ(g.pair_count(), 1u);
    EXPECT_EQ(g.weight(0, 1), 0.5);
    EXPECT_EQ(g.weight(1, 0), 0.5);
}

TEST(BuildGraph, UndirectedSingleListingIsMirrored) {
    auto t = triples({{"A", "B", 2.0}});
    const auto g = build_graph(t, Semantics::Distance, Directedness::Undirected).graph;
    EXPECT_EQ(g.weight(1, 0), 2.0);
}

TEST(BuildGraph, CompleteDigraphOf95Nodes) {
    std::vector<EdgeTriple> t;
    for (int i = 0; i < 95; ++i)
        for (int j = 0; j < 95; ++j)
            if (i != j) t.push_back({"c" + std::to_string(i), "c" + std::to_string(j), 1.0 + i + j});
    ASSERT_EQ(t.size(), 8930u);
    const auto g = build_graph(t, Semantics::Distance, Directedness::Directed).graph;
    EXPECT_EQ(g.node_count(), 95u);
    EXPECT_EQ(g.edge_count(), 8930u);
}

TEST(BuildGraph, Errors) {
    EXPECT_EQ(code_of([] {
                  auto t = triples({{"A", "B", -1.0}});
                  build_graph(t, Semantics::Distance, Directedness::Directed);
              }),
              ErrorCode::NegativeWeight);
    for (double bad : {0.0, 1.5, -0.2}) {
        EXPECT_EQ(code_of([bad] {
                      auto t = triples({{"A", "B", bad}});
                      build_graph(t, Semantics::Proximity, Directedness::Directed);
                  }),
                  ErrorCode::ProximityOutOfRange);
    }
    EXPECT_EQ(code_of([] {
                  auto t = triples({{"A", "B", 1.0}, {"A", "B", 2.0}});
                  build_graph(t, Semantics::Distance, Directedness::Directed);
              }),
              ErrorCode::DuplicateEdge);
    EXPECT_EQ(code_of([] {
                  auto t = triples({{"A", "B", 1.0}, {"B", "A", 2.0}});
                  build_graph(t, Semantics::Distance, Directedness::Undirected);
              }),
              ErrorCode::AsymmetricUndirected);
    EXPECT_EQ(code_of([] {
                  auto t = triples({{"A", "B", std::numeric_limits<double>::infinity()}});
                  build_graph(t, Semantics::Distance, Directedness::Directed);
              }),
              ErrorCode::NonFiniteWeight);
}

TEST(BuildGraph, ErrorNamesTheLine) {
    std::vector<EdgeTriple> t{{"A", "B", 1.0, 4}, {"B", "C", -3.0, 7}};
    try {
        build_graph(t, Semantics::Distance, Directedness::Directed);
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("line 7"), std::string::npos) << e.what();
    }
}

TEST(BuildGraph, SelfLoopsDroppedAndCounted) {
    auto t = triples({{"A", "A", 1.0}, {"A", "B", 2.0}, {"B", "B", 0.0}});
    const auto build = build_graph(t, Semantics::Distance, Directedness::Directed);
    EXPECT_EQ(build.self_loops_dropped, 2u);
    EXPECT_EQ(build.graph.edge_count(), 1u);
    EXPECT_EQ(build.graph.node_count(), 2u);
}

TEST(BuildGraph, ZeroLengthEdgesAreKeptAndCounted) {
    auto t = triples({{"A", "B", 0.0}, {"B", "C", 1.0}});
    const auto g = build_graph(t, Semantics::Distance, Directedness::Directed).graph;
    EXPECT_EQ(g.zero_length_edge_count(), 1u);
}

TEST(Conversion, ToDistance) {
    auto t = triples({{"A", "B", 1.0}, {"B", "C", 0.5}, {"C", "A", 0.25}});
    const auto p = build_graph(t, Semantics::Proximity, Directedness::Directed).graph;
    const auto d = to_distance(p);
    EXPECT_EQ(d.semantics(), Semantics::Distance);
    EXPECT_EQ(d.weight(0, 1), 0.0);
    EXPECT_EQ(d.weight(1, 2), 1.0);
    EXPECT_EQ(d.weight(2, 0), 3.0);
    EXPECT_EQ(d.edge_count(), p.edge_count());
}

TEST(Conversion, ToProximity) {
    auto t = triples({{"A", "B", 0.0}, {"B", "C", 1.0}, {"C", "A", 3.0}});
    const auto d = build_graph(t, Semantics::Distance, Directedness::Directed).graph;
    const auto p = to_proximity(d);
    EXPECT_EQ(p.weight(0, 1), 1.0);
    EXPECT_EQ(p.weight(1, 2), 0.5);
    EXPECT_EQ(p.weight(2, 0), 0.25);
    EXPECT_FALSE(p.weight(0, 2).has_value());
    EXPECT_EQ(distance_to_proximity(kUnreachable), 0.0);
}

TEST(Conversion, WrongSemantics) {
    const auto d = random_digraph(1, 5, 0.5);
    EXPECT_EQ(code_of([&] { to_distance(d); }), ErrorCode::WrongSemantics);
    const auto p = to_proximity(d);
    EXPECT_EQ(code_of([&] { to_proximity(p); }), ErrorCode::WrongSemantics);
}

TEST(ConversionProperty, RoundTripReproducesWeights) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto p = dbb::testing::random_proximity(seed, 12, 0.5);
        const auto back = to_proximity(to_distance(p));
        ASSERT_EQ(back.edge_count(), p.edge_count());
        for (std::size_t k = 0; k < p.edge_count(); ++k) {
            const double a = p.edges()[k].weight;
            const double b = back.edges()[k].weight;
            EXPECT_LE(std::abs(a - b), 1e-12 * a);
        }
    }
}

TEST(ConversionProperty, PhiStrictlyDecreasing) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(1e-6, 1.0);
    for (int s = 0; s < 10000; ++s) {
        double p1 = unit(rng), p2 = unit(rng);
        if (p1 == p2) continue;
        if (p1 > p2) std::swap(p1, p2);
        EXPECT_GT(proximity_to_distance(p1), proximity_to_distance(p2));
    }
}

TEST(Symmetrize, MinOfPair) {
    auto t = triples({{"A", "B", 2.0}, {"B", "A", 4.0}});
    const auto g = build_graph(t, Semantics::Distance, Directedness::Directed).graph;
    const auto u = symmetrize(g, SymmetrizeRule::Min);
    EXPECT_FALSE(u.directed());
    EXPECT_EQ(u.pair_count(), 1u);
    EXPECT_EQ(u.weight(0, 1), 2.0);
    EXPECT_EQ(u.weight(1, 0), 2.0);
    EXPECT_EQ(symmetrize(g, SymmetrizeRule::Max).weight(0, 1), 4.0);
    EXPECT_EQ(symmetrize(g, SymmetrizeRule::Mean).weight(1, 0), 3.0);
}

TEST(Symmetrize, SingleDirection) {
    auto t = triples({{"A", "B", 2.0}});
    const auto g = build_graph(t, Semantics::Distance, Directedness::Directed).graph;
    const auto u = symmetrize(g, SymmetrizeRule::Min);
    EXPECT_EQ(u.weight(0, 1), 2.0);
    EXPECT_EQ(u.weight(1, 0), 2.0);
}

TEST(SymmetrizeProperty, Idempotent) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto g = random_digraph(seed, 15, 0.3);
        for (auto rule : {SymmetrizeRule::Min, SymmetrizeRule::Max, SymmetrizeRule::Mean}) {
            const auto once = symmetrize(g, rule);
            const auto twice = symmetrize(once, rule);
            ASSERT_EQ(once.edge_count(), twice.edge_count());
            EXPECT_TRUE(std::equal(once.edges().begin(), once.edges().end(), twice.edges().begin()));
            for (const auto& e : once.edges()) {
                EXPECT_EQ(once.weight(e.target, e.source), e.weight);
            }
        }
    }
}

TEST(WeightedDigraph, EdgeCountMatchesStoredOrderedEntries) {
    const auto g = random_digraph(3, 20, 0.4);
    std::size_t count = 0;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        for (std::size_t j = 0; j < g.node_count(); ++j) {
            if (i != j && g.weight(static_cast<NodeIndex>(i), static_cast<NodeIndex>(j))) ++count;
        }
    }
    EXPECT_EQ(count, g.edge_count());
}

TEST(WeightedDigraph, RejectsAsymmetricUndirectedConstruction) {
    std::vector<Edge> edges{{0, 1, 1.0}};
    EXPECT_EQ(code_of([&] {
                  WeightedDigraph({"a", "b"}, edges, Semantics::Distance, Directedness::Undirected);
              }),
              ErrorCode::AsymmetricUndirected);
}

TEST(AsymmetricFraction, Extremes) {
    auto one_way = triples({{"A", "B", 1.0}});
    EXPECT_DOUBLE_EQ(asymmetric_fraction(build_graph(one_way, Semantics::Distance, Directedness::Directed).graph),
                     1.0);
    auto both = triples({{"A", "B", 1.0}, {"B", "A", 5.0}});
    EXPECT_DOUBLE_EQ(asymmetric_fraction(build_graph(both, Semantics::Distance, Directedness::Directed).graph), 0.0);
}
