#pragma once

// Independent reference computations for tests. Nothing here may call into
// the routing, pmf or simulator code paths it is used to check.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <queue>
#include <vector>

#include "linkcap/graph.hpp"

namespace linkcap::oracle {

inline std::vector<int> bfs_distances(const Topology& g, NodeId s) {
    std::vector<int> dist(g.node_count(), -1);
    std::queue<NodeId> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
        NodeId v = q.front();
        q.pop();
        for (const Neighbor& nb : g.neighbors(v))
            if (dist[nb.node] < 0) {
                dist[nb.node] = dist[v] + 1;
                q.push(nb.node);
            }
    }
    return dist;
}

inline std::size_t components(const Topology& g) {
    std::vector<bool> seen(g.node_count(), false);
    std::size_t count = 0;
    for (NodeId s = 0; s < g.node_count(); ++s) {
        if (seen[s]) continue;
        ++count;
        auto d = bfs_distances(g, s);
        for (NodeId v = 0; v < g.node_count(); ++v)
            if (d[v] >= 0) seen[v] = true;
    }
    return count;
}

/// Every shortest m-n path, each as a list of edge ids, by explicit DFS.
inline std::vector<std::vector<EdgeId>> all_shortest_paths(const Topology& g, NodeId m, NodeId n) {
    const auto to_target = bfs_distances(g, n);
    std::vector<std::vector<EdgeId>> paths;
    std::vector<EdgeId> current;
    auto dfs = [&](auto&& self, NodeId v) -> void {
        if (v == n) {
            paths.push_back(current);
            return;
        }
        for (const Neighbor& nb : g.neighbors(v))
            if (to_target[nb.node] == to_target[v] - 1) {
                current.push_back(nb.edge);
                self(self, nb.node);
                current.pop_back();
            }
    };
    dfs(dfs, m);
    return paths;
}

/// f for every (edge, m, n) by enumeration: map keyed by (m*n_nodes+n) per edge.
inline std::vector<std::map<std::pair<NodeId, NodeId>, double>> enumerated_fractions(const Topology& g) {
    std::vector<std::map<std::pair<NodeId, NodeId>, double>> out(g.edge_count());
    for (NodeId m = 0; m < g.node_count(); ++m)
        for (NodeId n = 0; n < g.node_count(); ++n) {
            if (m == n) continue;
            const auto paths = all_shortest_paths(g, m, n);
            std::vector<std::size_t> through(g.edge_count(), 0);
            for (const auto& p : paths)
                for (EdgeId e : p) ++through[e];
            for (EdgeId e = 0; e < g.edge_count(); ++e)
                if (through[e] > 0)
                    out[e][{m, n}] = static_cast<double>(through[e]) / static_cast<double>(paths.size());
        }
    return out;
}

inline std::vector<double> enumerated_betweenness(const Topology& g) {
    std::vector<double> b(g.edge_count(), 0.0);
    auto fractions = enumerated_fractions(g);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        for (const auto& [pair, f] : fractions[e]) b[e] += f;
    return b;
}

/// Poisson pmf by the multiplicative recurrence, k = 0..len-1.
inline std::vector<double> poisson_by_recurrence(double lambda, std::size_t len) {
    std::vector<double> p(len);
    p[0] = std::exp(-lambda);
    for (std::size_t k = 1; k < len; ++k) p[k] = p[k - 1] * lambda / static_cast<double>(k);
    return p;
}

/// Exact load pmf of one edge under homogeneous (lambda, q): enumerate the
/// mixture of "pair sends and crosses" events in closed form. Each pair's
/// contribution is 0 with probability 1 - q f (or q f e^-lambda) and
/// Poisson-distributed otherwise; the sum is built by repeated convolution
/// with the recurrence pmf, independent of omega().
inline std::vector<double> edge_load_reference(const std::vector<double>& fractions, double lambda,
                                               double q, std::size_t per_pair_len) {
    const auto poisson = poisson_by_recurrence(lambda, per_pair_len);
    std::vector<double> acc{1.0};
    for (double f : fractions) {
        std::vector<double> term(per_pair_len, 0.0);
        const double cross = q * f;
        term[0] = (1.0 - cross) + cross * poisson[0];
        for (std::size_t k = 1; k < per_pair_len; ++k) term[k] = cross * poisson[k];
        std::vector<double> next(acc.size() + term.size() - 1, 0.0);
        for (std::size_t i = 0; i < acc.size(); ++i)
            for (std::size_t j = 0; j < term.size(); ++j) next[i + j] += acc[i] * term[j];
        acc.swap(next);
    }
    return acc;
}

inline double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t len = std::max(a.size(), b.size());
    double tv = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
        const double x = k < a.size() ? a[k] : 0.0;
        const double y = k < b.size() ? b[k] : 0.0;
        tv += std::abs(x - y);
    }
    return 0.5 * tv;
}

}  // namespace linkcap::oracle
