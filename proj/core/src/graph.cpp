#include "linkcap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

#include "linkcap/error.hpp"

namespace linkcap {

Topology::Topology(std::size_t node_count, std::vector<Edge> edges)
    : edges_(std::move(edges)), adjacency_(node_count) {
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (e.u == e.v) throw InvalidInput("self-loop at node " + std::to_string(e.u));
        if (e.v >= node_count)
            throw InvalidInput("node id " + std::to_string(e.v) + " out of range for " +
                               std::to_string(node_count) + " nodes");
        if (i > 0 && edges_[i - 1] == e)
            throw InvalidInput("duplicate edge " + std::to_string(e.u) + "-" +
                               std::to_string(e.v));
        adjacency_[e.u].push_back({e.v, i});
        adjacency_[e.v].push_back({e.u, i});
    }
    for (auto& list : adjacency_)
        std::sort(list.begin(), list.end(),
                  [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
}

std::optional<EdgeId> Topology::find_edge(NodeId a, NodeId b) const {
    if (a >= node_count() || b >= node_count()) return std::nullopt;
    const auto& list = adjacency_[a];
    auto it = std::lower_bound(list.begin(), list.end(), b,
                               [](const Neighbor& nb, NodeId x) { return nb.node < x; });
    if (it == list.end() || it->node != b) return std::nullopt;
    return it->edge;
}

Topology Topology::without_edge(EdgeId id) const {
    if (id >= edges_.size()) throw InvalidInput("edge id out of range");
    std::vector<Edge> rest;
    rest.reserve(edges_.size() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (i != id) rest.push_back(edges_[i]);
    return Topology(node_count(), std::move(rest));
}

Topology generate_barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (m < 1 || n <= m)
        throw InvalidParameter("Barabasi-Albert requires n > m >= 1 (got n=" + std::to_string(n) +
                               ", m=" + std::to_string(m) + ")");
    Rng rng(seed);
    std::vector<Edge> edges;
    std::vector<std::uint64_t> degree(n, 0);
    for (NodeId i = 0; i < m; ++i)
        for (NodeId j = i + 1; j < m; ++j) {
            edges.emplace_back(i, j);
            ++degree[i];
            ++degree[j];
        }

    std::vector<NodeId> targets;
    for (NodeId node = static_cast<NodeId>(m); node < n; ++node) {
        targets.clear();
        if (node == m) {
            for (NodeId t = 0; t < m; ++t) targets.push_back(t);
        } else {
            const std::uint64_t total = std::accumulate(degree.begin(), degree.begin() + node,
                                                        std::uint64_t{0});
            std::uniform_int_distribution<std::uint64_t> pick(0, total - 1);
            while (targets.size() < m) {
                std::uint64_t r = pick(rng);
                NodeId t = 0;
                while (r >= degree[t]) r -= degree[t++];
                if (std::find(targets.begin(), targets.end(), t) == targets.end())
                    targets.push_back(t);
            }
        }
        for (NodeId t : targets) {
            edges.emplace_back(t, node);
            ++degree[t];
            ++degree[node];
        }
    }
    return Topology(n, std::move(edges));
}

Topology complete_graph(std::size_t n) {
    if (n < 2) throw InvalidParameter("complete graph requires n >= 2");
    std::vector<Edge> edges;
    edges.reserve(n * (n - 1) / 2);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Topology(n, std::move(edges));
}

Topology path_graph(std::size_t n) {
    if (n < 1) throw InvalidParameter("path graph requires n >= 1");
    std::vector<Edge> edges;
    for (NodeId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Topology(n, std::move(edges));
}

Topology cycle_graph(std::size_t n) {
    if (n < 3) throw InvalidParameter("cycle graph requires n >= 3");
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) edges.emplace_back(i, static_cast<NodeId>((i + 1) % n));
    return Topology(n, std::move(edges));
}

Topology star_graph(std::size_t leaves) {
    if (leaves < 1) throw InvalidParameter("star graph requires at least one leaf");
    std::vector<Edge> edges;
    for (NodeId i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return Topology(leaves + 1, std::move(edges));
}

Topology remove_random_edge(const Topology& g, Rng& rng) {
    if (g.edge_count() == 0) throw InvalidState("cannot remove an edge from an edgeless graph");
    std::uniform_int_distribution<EdgeId> pick(0, g.edge_count() - 1);
    return g.without_edge(pick(rng));
}

std::size_t component_count(const Topology& g) {
    const std::size_t n = g.node_count();
    std::vector<bool> seen(n, false);
    std::size_t components = 0;
    std::vector<NodeId> stack;
    for (NodeId s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++components;
        seen[s] = true;
        stack.push_back(s);
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            for (const Neighbor& nb : g.neighbors(v))
                if (!seen[nb.node]) {
                    seen[nb.node] = true;
                    stack.push_back(nb.node);
                }
        }
    }
    return components;
}

bool is_connected(const Topology& g) { return g.node_count() > 0 && component_count(g) == 1; }

namespace {

// Brandes accumulation with edge credits. Summing over every source counts
// each ordered pair once. Unreachable pairs contribute nothing.
std::vector<double> brandes_edge_betweenness(const Topology& g) {
    const std::size_t n = g.node_count();
    std::vector<double> centrality(g.edge_count(), 0.0);
    std::vector<long long> dist(n);
    std::vector<double> sigma(n);
    std::vector<double> delta(n);
    std::vector<NodeId> order;
    order.reserve(n);
    std::queue<NodeId> frontier;

    for (NodeId s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        order.clear();
        dist[s] = 0;
        sigma[s] = 1.0;
        frontier.push(s);
        while (!frontier.empty()) {
            NodeId v = frontier.front();
            frontier.pop();
            order.push_back(v);
            for (const Neighbor& nb : g.neighbors(v)) {
                if (dist[nb.node] < 0) {
                    dist[nb.node] = dist[v] + 1;
                    frontier.push(nb.node);
                }
                if (dist[nb.node] == dist[v] + 1) sigma[nb.node] += sigma[v];
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            NodeId w = *it;
            for (const Neighbor& nb : g.neighbors(w)) {
                if (dist[nb.node] != dist[w] - 1) continue;
                double credit = sigma[nb.node] / sigma[w] * (1.0 + delta[w]);
                centrality[nb.edge] += credit;
                delta[nb.node] += credit;
            }
        }
    }
    return centrality;
}

double population_std(std::span<const double> values, double mean) {
    if (values.empty()) return 0.0;
    double acc = 0.0;
    for (double x : values) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / static_cast<double>(values.size()));
}

}  // namespace

std::vector<double> edge_betweenness(const Topology& g) {
    if (!is_connected(g)) throw InvalidInput("edge betweenness requires a connected graph");
    return brandes_edge_betweenness(g);
}

std::vector<EdgeId> rank_by_centrality(std::span<const double> centrality) {
    std::vector<EdgeId> order(centrality.size());
    std::iota(order.begin(), order.end(), EdgeId{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](EdgeId a, EdgeId b) { return centrality[a] > centrality[b]; });
    return order;
}

GraphStats graph_stats(const Topology& g) {
    GraphStats s;
    const std::size_t n = g.node_count();
    s.edge_count = g.edge_count();
    if (n == 0) return s;

    std::vector<double> degrees(n);
    for (NodeId v = 0; v < n; ++v) degrees[v] = static_cast<double>(g.degree(v));
    s.mean_degree = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(n);
    s.degree_std = population_std(degrees, s.mean_degree);

    if (g.edge_count() > 0) {
        std::vector<double> b = brandes_edge_betweenness(g);
        s.mean_edge_centrality =
            std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(b.size());
        s.edge_centrality_std = population_std(b, s.mean_edge_centrality);
    }
    return s;
}

}  // namespace linkcap
