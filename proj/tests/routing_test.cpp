#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "linkcap/error.hpp"
#include "linkcap/routing.hpp"
#include "oracles.hpp"

using namespace linkcap;

TEST(RoutingTable, UniquePathHasFullFraction) {
    Topology g = path_graph(3);
    RoutingTable t(g);
    EXPECT_DOUBLE_EQ(t.fraction(*g.find_edge(0, 1), 0, 2), 1.0);
    EXPECT_DOUBLE_EQ(t.fraction(*g.find_edge(1, 2), 0, 2), 1.0);
    EXPECT_EQ(t.path_count(0, 2), 1);
}

TEST(RoutingTable, FourCycleSplitsEvenly) {
    Topology g = cycle_graph(4);
    RoutingTable t(g);
    EXPECT_EQ(t.path_count(0, 2), 2);
    EXPECT_DOUBLE_EQ(t.fraction(*g.find_edge(0, 1), 0, 2), 0.5);
    EXPECT_DOUBLE_EQ(t.fraction(*g.find_edge(0, 3), 0, 2), 0.5);
}

TEST(RoutingTable, OffPathPairsAreAbsent) {
    Topology g = path_graph(4);
    RoutingTable t(g);
    const EdgeId last = *g.find_edge(2, 3);
    EXPECT_DOUBLE_EQ(t.fraction(last, 0, 1), 0.0);
    for (const Contribution& c : t.contributions(last)) {
        EXPECT_FALSE(c.source == 0 && c.target == 1);
        EXPECT_GT(c.fraction, 0.0);
    }
}

TEST(RoutingTable, MatchesExplicitEnumeration) {
    for (std::uint64_t seed : {1u, 5u, 13u}) {
        Topology g = generate_barabasi_albert(14, 2, seed);
        RoutingTable t(g);
        auto expected = oracle::enumerated_fractions(g);
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            ASSERT_EQ(t.contributions(e).size(), expected[e].size()) << "edge " << e;
            for (const Contribution& c : t.contributions(e))
                EXPECT_NEAR(c.fraction, expected[e].at({c.source, c.target}), 1e-15);
        }
    }
}

TEST(RoutingTable, FractionsAreExactRatiosAndSumToHopCount) {
    Topology g = generate_barabasi_albert(20, 3, 17);
    RoutingTable t(g);
    std::map<std::pair<NodeId, NodeId>, double> hop_sum;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        for (const Contribution& c : t.contributions(e)) {
            const PathCount& total = t.path_count(c.source, c.target);
            EXPECT_GT(c.fraction, 0.0);
            EXPECT_LE(c.fraction, 1.0);
            EXPECT_GE(c.paths_through, 1);
            EXPECT_LE(c.paths_through, total);
            EXPECT_DOUBLE_EQ(c.fraction, c.paths_through.convert_to<double>() / total.convert_to<double>());
            hop_sum[{c.source, c.target}] += c.fraction;
        }
    for (NodeId m = 0; m < g.node_count(); ++m)
        for (NodeId n = 0; n < g.node_count(); ++n)
            if (m != n) EXPECT_NEAR((hop_sum[{m, n}]), t.distance(m, n), 1e-9);
}

TEST(RoutingTable, ContributionsAgreeWithBetweenness) {
    Topology g = generate_barabasi_albert(30, 4, 3);
    RoutingTable t(g);
    auto b = edge_betweenness(g);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        double s = 0.0;
        for (const Contribution& c : t.contributions(e)) s += c.fraction;
        EXPECT_NEAR(s, b[e], 1e-9);
    }
}

TEST(RoutingTable, LargePathCountsStayExact) {
    // A chain of 70 diamonds has 2^70 end-to-end shortest paths.
    std::vector<Edge> edges;
    const NodeId diamonds = 70;
    for (NodeId d = 0; d < diamonds; ++d) {
        const NodeId base = 3 * d;
        edges.emplace_back(base, base + 1);
        edges.emplace_back(base, base + 2);
        edges.emplace_back(base + 1, base + 3);
        edges.emplace_back(base + 2, base + 3);
    }
    Topology g(3 * diamonds + 1, edges);
    RoutingTable t(g);
    PathCount expected = 1;
    expected <<= diamonds;
    EXPECT_EQ(t.path_count(0, 3 * diamonds), expected);
    EXPECT_DOUBLE_EQ(t.fraction(*g.find_edge(0, 1), 0, 3 * diamonds), 0.5);
}

TEST(RoutingTable, RejectsDisconnected) {
    EXPECT_THROW(RoutingTable(Topology(3, {{0, 1}})), InvalidInput);
}

TEST(SamplePath, UniquePathAlways) {
    Topology g = path_graph(4);
    RoutingTable t(g);
    Rng rng(5);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(t.sample_path(0, 3, rng), (std::vector<NodeId>{0, 1, 2, 3}));
}

TEST(SamplePath, FourCycleIsFair) {
    Topology g = cycle_graph(4);
    RoutingTable t(g);
    Rng rng(123);
    const int draws = 100000;
    int via_one = 0;
    for (int i = 0; i < draws; ++i) {
        auto p = t.sample_path(0, 2, rng);
        ASSERT_EQ(p.size(), 3u);
        if (p[1] == 1) ++via_one;
    }
    EXPECT_NEAR(via_one / double(draws), 0.5, 0.01);
}

TEST(SamplePath, LengthIsBfsDistanceAndPathIsValid) {
    Topology g = generate_barabasi_albert(25, 2, 21);
    RoutingTable t(g);
    Rng rng(9);
    for (NodeId m = 0; m < g.node_count(); m += 3)
        for (NodeId n = 0; n < g.node_count(); n += 2) {
            if (m == n) continue;
            auto p = t.sample_path(m, n, rng);
            auto d = oracle::bfs_distances(g, m);
            ASSERT_EQ(p.size(), static_cast<std::size_t>(d[n]) + 1);
            EXPECT_EQ(p.front(), m);
            EXPECT_EQ(p.back(), n);
            for (std::size_t i = 0; i + 1 < p.size(); ++i) EXPECT_TRUE(g.has_edge(p[i], p[i + 1]));
        }
}

TEST(SamplePath, EdgeFrequenciesConvergeToFractions) {
    Topology g = generate_barabasi_albert(12, 3, 2);
    RoutingTable t(g);
    Rng rng(31);
    const int draws = 20000;
    std::vector<EdgeId> path;
    for (NodeId m : {0u, 5u})
        for (NodeId n : {7u, 11u}) {
            std::vector<int> hits(g.edge_count(), 0);
            for (int i = 0; i < draws; ++i) {
                t.sample_path_edges(m, n, rng, path);
                for (EdgeId e : path) ++hits[e];
            }
            for (EdgeId e = 0; e < g.edge_count(); ++e) {
                const double f = t.fraction(e, m, n);
                const double sigma = std::sqrt(f * (1.0 - f) / draws);
                EXPECT_NEAR(hits[e] / double(draws), f, 3.0 * sigma + 1e-12) << "edge " << e;
            }
        }
}

TEST(SamplePath, SameStreamSameEdges) {
    Topology g = generate_barabasi_albert(16, 2, 6);
    RoutingTable t(g);
    Rng a(8), b(8);
    std::vector<EdgeId> edges;
    for (int i = 0; i < 50; ++i) {
        auto nodes = t.sample_path(3, 14, a);
        t.sample_path_edges(3, 14, b, edges);
        ASSERT_EQ(edges.size() + 1, nodes.size());
        for (std::size_t k = 0; k < edges.size(); ++k) {
            // Edges come back from the target end.
            const std::size_t hop = nodes.size() - 2 - k;
            EXPECT_EQ(edges[k], *g.find_edge(nodes[hop], nodes[hop + 1]));
        }
    }
}

TEST(SamplePath, RejectsEqualEndpoints) {
    RoutingTable t(path_graph(3));
    Rng rng(1);
    EXPECT_THROW(t.sample_path(1, 1, rng), InvalidParameter);
}

TEST(RoutingJson, ListsPairsPerEdge) {
    Topology g = cycle_graph(4);
    auto doc = routing_to_json(g, RoutingTable(g));
    ASSERT_EQ(doc["edges"].size(), 4u);
    bool found = false;
    for (const auto& p : doc["edges"][0]["pairs"])
        if (p["m"] == 0 && p["n"] == 2) {
            EXPECT_DOUBLE_EQ(p["f"].get<double>(), 0.5);
            EXPECT_EQ(p["paths"], "2");
            found = true;
        }
    EXPECT_TRUE(found);
}
