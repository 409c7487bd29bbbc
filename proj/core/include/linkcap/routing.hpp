#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "linkcap/graph.hpp"
#include "linkcap/rng.hpp"

namespace linkcap {

/// Exact shortest-path counts; these grow exponentially on lattice-like graphs.
using PathCount = boost::multiprecision::cpp_int;

/// One entry of A_ij: pair (source,target) routes a fraction of its traffic
/// over the edge.
struct Contribution {
    NodeId source;
    NodeId target;
    double fraction;        ///< paths_through / total paths, in (0, 1]
    PathCount paths_through;
};

/// Shortest-path routing fractions for every edge of a topology.
///
/// Built from one BFS per source (predecessor DAG with path counts), not by
/// enumerating paths. Immutable after construction.
class RoutingTable {
   public:
    /// Throws InvalidInput if `g` is disconnected or has fewer than 2 nodes.
    explicit RoutingTable(const Topology& g);

    std::size_t node_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return contributions_.size(); }

    /// The contributing set of `edge`, ordered by (source, target).
    std::span<const Contribution> contributions(EdgeId edge) const {
        return contributions_.at(edge);
    }

    /// Routing fraction of pair (m,n) on `edge`; 0 when the edge is on no
    /// shortest m-n path.
    double fraction(EdgeId edge, NodeId m, NodeId n) const;

    std::uint32_t distance(NodeId m, NodeId n) const { return distance_[m * n_ + n]; }
    const PathCount& path_count(NodeId m, NodeId n) const { return paths_[m * n_ + n]; }

    /// Draws one of the shortest m-n paths uniformly at random. Returns the
    /// node sequence m ... n. Throws InvalidParameter if m == n.
    std::vector<NodeId> sample_path(NodeId m, NodeId n, Rng& rng) const;

    /// Same draw as sample_path, reported as the traversed edge ids in order
    /// from n back to m. Consumes exactly the same random numbers.
    void sample_path_edges(NodeId m, NodeId n, Rng& rng, std::vector<EdgeId>& out) const;

    /// A copy with the given contributing entries dropped. Test seam for
    /// the empty-A_ij case.
    RoutingTable with_contributions(EdgeId edge, std::vector<Contribution> entries) const;

   private:
    struct Predecessor {
        NodeId node;
        EdgeId edge;
        double cumulative;  ///< running sum of sigma(pred)/sigma(node)
    };

    std::span<const Predecessor> predecessors(NodeId source, NodeId node) const;
    const Predecessor& choose_predecessor(NodeId source, NodeId node, Rng& rng) const;
    void check_endpoints(NodeId m, NodeId n) const;

    std::size_t n_ = 0;
    std::vector<std::uint32_t> distance_;
    std::vector<PathCount> paths_;
    std::vector<std::vector<Contribution>> contributions_;
    // Per source, CSR layout over nodes.
    std::vector<std::vector<std::size_t>> pred_offsets_;
    std::vector<std::vector<Predecessor>> preds_;
};

/// {"edges": [{"u","v","pairs": [{"m","n","f","paths_through","paths"}]}]}
nlohmann::json routing_to_json(const Topology& g, const RoutingTable& table);

}  // namespace linkcap
