#include "linkcap/routing.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

#include "linkcap/error.hpp"

namespace linkcap {

namespace {

using boost::multiprecision::cpp_rational;

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

double ratio(const PathCount& num, const PathCount& den) {
    return cpp_rational(num, den).convert_to<double>();
}

}  // namespace

RoutingTable::RoutingTable(const Topology& g)
    : n_(g.node_count()),
      distance_(n_ * n_, kUnreached),
      paths_(n_ * n_),
      contributions_(g.edge_count()),
      pred_offsets_(n_),
      preds_(n_) {
    if (n_ < 2) throw InvalidInput("routing requires at least two nodes");
    if (!is_connected(g)) throw InvalidInput("routing requires a connected graph");

    std::vector<NodeId> order;
    order.reserve(n_);
    for (NodeId s = 0; s < n_; ++s) {
        std::uint32_t* dist = &distance_[s * n_];
        PathCount* sigma = &paths_[s * n_];
        order.clear();
        dist[s] = 0;
        sigma[s] = 1;
        order.push_back(s);
        for (std::size_t head = 0; head < order.size(); ++head) {
            NodeId v = order[head];
            for (const Neighbor& nb : g.neighbors(v)) {
                if (dist[nb.node] == kUnreached) {
                    dist[nb.node] = dist[v] + 1;
                    order.push_back(nb.node);
                }
                if (dist[nb.node] == dist[v] + 1) sigma[nb.node] += sigma[v];
            }
        }

        auto& offsets = pred_offsets_[s];
        auto& preds = preds_[s];
        offsets.assign(n_ + 1, 0);
        for (NodeId w = 0; w < n_; ++w) {
            offsets[w] = preds.size();
            if (w == s) continue;
            const std::size_t first = preds.size();
            for (const Neighbor& nb : g.neighbors(w))
                if (dist[nb.node] + 1 == dist[w]) preds.push_back({nb.node, nb.edge, 0.0});
            PathCount running = 0;
            for (std::size_t i = first; i < preds.size(); ++i) {
                running += sigma[preds[i].node];
                preds[i].cumulative = ratio(running, sigma[w]);
            }
            preds.back().cumulative = 1.0;
        }
        offsets[n_] = preds.size();
    }

    const auto edges = g.edges();
    for (NodeId m = 0; m < n_; ++m) {
        for (NodeId n = 0; n < n_; ++n) {
            if (m == n) continue;
            const std::uint32_t d = distance(m, n);
            const PathCount& total = path_count(m, n);
            for (EdgeId e = 0; e < edges.size(); ++e) {
                const NodeId u = edges[e].u, v = edges[e].v;
                PathCount through;
                if (distance(m, u) + 1 + distance(v, n) == d)
                    through = path_count(m, u) * path_count(v, n);
                else if (distance(m, v) + 1 + distance(u, n) == d)
                    through = path_count(m, v) * path_count(u, n);
                else
                    continue;
                contributions_[e].push_back({m, n, ratio(through, total), std::move(through)});
            }
        }
    }
}

double RoutingTable::fraction(EdgeId edge, NodeId m, NodeId n) const {
    const auto& list = contributions_.at(edge);
    auto it = std::lower_bound(list.begin(), list.end(), std::pair{m, n},
                               [](const Contribution& c, const std::pair<NodeId, NodeId>& key) {
                                   return std::pair{c.source, c.target} < key;
                               });
    if (it == list.end() || it->source != m || it->target != n) return 0.0;
    return it->fraction;
}

std::span<const RoutingTable::Predecessor> RoutingTable::predecessors(NodeId source,
                                                                      NodeId node) const {
    const auto& offsets = pred_offsets_[source];
    return std::span<const Predecessor>(preds_[source]).subspan(
        offsets[node], offsets[node + 1] - offsets[node]);
}

const RoutingTable::Predecessor& RoutingTable::choose_predecessor(NodeId source, NodeId node,
                                                                 Rng& rng) const {
    const auto preds = predecessors(source, node);
    if (preds.size() == 1) return preds.front();
    // Picking predecessor v of w with weight sigma(v)/sigma(w) at every step
    // selects each shortest path with probability 1/L.
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    for (const Predecessor& p : preds)
        if (u < p.cumulative) return p;
    return preds.back();
}

void RoutingTable::check_endpoints(NodeId m, NodeId n) const {
    if (m >= n_ || n >= n_) throw InvalidParameter("path endpoint out of range");
    if (m == n) throw InvalidParameter("path endpoints must differ");
}

void RoutingTable::sample_path_edges(NodeId m, NodeId n, Rng& rng,
                                     std::vector<EdgeId>& out) const {
    check_endpoints(m, n);
    out.clear();
    for (NodeId w = n; w != m;) {
        const Predecessor& p = choose_predecessor(m, w, rng);
        out.push_back(p.edge);
        w = p.node;
    }
}

std::vector<NodeId> RoutingTable::sample_path(NodeId m, NodeId n, Rng& rng) const {
    check_endpoints(m, n);
    std::vector<NodeId> nodes{n};
    for (NodeId w = n; w != m;) {
        w = choose_predecessor(m, w, rng).node;
        nodes.push_back(w);
    }
    std::reverse(nodes.begin(), nodes.end());
    return nodes;
}

RoutingTable RoutingTable::with_contributions(EdgeId edge,
                                              std::vector<Contribution> entries) const {
    RoutingTable copy = *this;
    copy.contributions_.at(edge) = std::move(entries);
    return copy;
}

nlohmann::json routing_to_json(const Topology& g, const RoutingTable& table) {
    if (g.edge_count() != table.edge_count() || g.node_count() != table.node_count())
        throw InvalidInput("routing table was built for a different topology");
    nlohmann::json edges = nlohmann::json::array();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        nlohmann::json pairs = nlohmann::json::array();
        for (const Contribution& c : table.contributions(e))
            pairs.push_back({{"m", c.source},
                             {"n", c.target},
                             {"f", c.fraction},
                             {"paths_through", c.paths_through.str()},
                             {"paths", table.path_count(c.source, c.target).str()}});
        edges.push_back({{"u", g.edge(e).u}, {"v", g.edge(e).v}, {"pairs", std::move(pairs)}});
    }
    return {{"n", g.node_count()}, {"edges", std::move(edges)}};
}

}  // namespace linkcap
