#include "linkcap/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "linkcap/error.hpp"

namespace linkcap {

namespace {

void check_rate(double lambda, double q) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw InvalidParameter("lambda must be a finite non-negative number");
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidParameter("q must lie in [0, 1]");
}

}  // namespace

TrafficConfig TrafficConfig::homogeneous(std::size_t node_count, double lambda, double q) {
    check_rate(lambda, q);
    TrafficConfig t;
    t.n_ = node_count;
    t.lambda_.assign(node_count * node_count, lambda);
    t.q_.assign(node_count * node_count, q);
    for (std::size_t i = 0; i < node_count; ++i) {
        t.lambda_[i * node_count + i] = 0.0;
        t.q_[i * node_count + i] = 0.0;
    }
    return t;
}

std::size_t TrafficConfig::index(NodeId m, NodeId n) const {
    if (m >= n_ || n >= n_) throw InvalidInput("traffic pair out of range");
    return static_cast<std::size_t>(m) * n_ + n;
}

void TrafficConfig::set(NodeId m, NodeId n, double lambda, double q) {
    check_rate(lambda, q);
    if (m == n) throw InvalidParameter("traffic pair must have distinct endpoints");
    const std::size_t i = index(m, n);
    lambda_[i] = lambda;
    q_[i] = q;
}

bool TrafficConfig::is_homogeneous() const noexcept {
    if (n_ < 2) return true;
    const double l0 = lambda_[1], q0 = q_[1];
    for (std::size_t m = 0; m < n_; ++m)
        for (std::size_t n = 0; n < n_; ++n)
            if (m != n && (lambda_[m * n_ + n] != l0 || q_[m * n_ + n] != q0)) return false;
    return true;
}

}  // namespace linkcap
