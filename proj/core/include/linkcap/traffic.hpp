#pragma once

#include <cstddef>
#include <vector>

#include "linkcap/graph.hpp"

namespace linkcap {

/// Per ordered pair (m,n): mean packet count given activation, and the
/// activation probability. q(m,n) and q(n,m) are independent.
class TrafficConfig {
   public:
    TrafficConfig() = default;

    static TrafficConfig homogeneous(std::size_t node_count, double lambda, double q);

    std::size_t node_count() const noexcept { return n_; }

    double lambda(NodeId m, NodeId n) const { return lambda_[index(m, n)]; }
    double q(NodeId m, NodeId n) const { return q_[index(m, n)]; }

    /// Throws InvalidParameter for lambda < 0 or q outside [0,1].
    void set(NodeId m, NodeId n, double lambda, double q);

    bool is_homogeneous() const noexcept;

   private:
    std::size_t index(NodeId m, NodeId n) const;

    std::size_t n_ = 0;
    std::vector<double> lambda_;
    std::vector<double> q_;
};

}  // namespace linkcap
