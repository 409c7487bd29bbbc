#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "linkcap/rng.hpp"

namespace linkcap {

using NodeId = std::uint32_t;
using EdgeId = std::size_t;

/// Undirected edge stored with u < v.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;

    Edge() = default;
    Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Neighbor {
    NodeId node;
    EdgeId edge;
};

/// Simple undirected graph over dense node ids 0..n-1.
///
/// Edges are kept sorted, and an edge's id is its index in that order, so
/// two topologies with the same node count and edge set are identical.
/// Instances are immutable; mutating operations return new values.
class Topology {
   public:
    Topology() = default;

    /// Throws InvalidInput on self-loops, duplicates or out-of-range ids.
    Topology(std::size_t node_count, std::vector<Edge> edges);

    std::size_t node_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    std::span<const Edge> edges() const noexcept { return edges_; }
    const Edge& edge(EdgeId id) const { return edges_.at(id); }

    /// Neighbors of `node`, sorted by node id.
    std::span<const Neighbor> neighbors(NodeId node) const { return adjacency_.at(node); }
    std::size_t degree(NodeId node) const { return adjacency_.at(node).size(); }

    std::optional<EdgeId> find_edge(NodeId a, NodeId b) const;
    bool has_edge(NodeId a, NodeId b) const { return find_edge(a, b).has_value(); }

    Topology without_edge(EdgeId id) const;

    friend bool operator==(const Topology& a, const Topology& b) {
        return a.node_count() == b.node_count() && a.edges_ == b.edges_;
    }

   private:
    std::vector<Edge> edges_;
    std::vector<std::vector<Neighbor>> adjacency_;
};

struct GraphStats {
    double mean_degree = 0.0;
    double degree_std = 0.0;
    double mean_edge_centrality = 0.0;
    double edge_centrality_std = 0.0;
    std::size_t edge_count = 0;
};

/// Barabasi-Albert preferential attachment.
///
/// Nodes 0..m-1 form a seed clique. Each later node attaches to m distinct
/// existing nodes drawn with probability proportional to current degree
/// (node m, facing exactly m candidates, joins all of them). The result has
/// C(m,2) + m(n-m) edges and minimum degree m.
Topology generate_barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed);

Topology complete_graph(std::size_t n);
Topology path_graph(std::size_t n);
Topology cycle_graph(std::size_t n);
Topology star_graph(std::size_t leaves);

/// Removes one edge chosen uniformly at random. The node set is unchanged.
Topology remove_random_edge(const Topology& g, Rng& rng);

bool is_connected(const Topology& g);
std::size_t component_count(const Topology& g);

/// Edge betweenness over ordered pairs (s,t), s != t: for every edge, the sum
/// of (shortest s-t paths through the edge) / (shortest s-t paths). Each
/// unordered pair therefore contributes twice. Throws InvalidInput if `g`
/// is disconnected.
std::vector<double> edge_betweenness(const Topology& g);

/// Edge ids sorted by decreasing betweenness; ties broken by edge id.
std::vector<EdgeId> rank_by_centrality(std::span<const double> centrality);

GraphStats graph_stats(const Topology& g);

}  // namespace linkcap
