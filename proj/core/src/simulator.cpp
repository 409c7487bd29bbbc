#include "linkcap/simulator.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "linkcap/error.hpp"
#include "parallel.hpp"

namespace linkcap {

namespace {

constexpr std::uint32_t kNoTraffic = std::numeric_limits<std::uint32_t>::max();

void check_shapes(const Topology& g, const RoutingTable& table, const TrafficConfig& traffic) {
    if (table.node_count() != g.node_count() || table.edge_count() != g.edge_count())
        throw InvalidInput("routing table was built for a different topology");
    if (traffic.node_count() != g.node_count())
        throw InvalidInput("traffic config is sized for a different topology");
}

}  // namespace

FrameTrace::FrameTrace(std::size_t n_frames, std::vector<Capacity> capacity)
    : n_frames_(n_frames),
      capacity_(std::move(capacity)),
      loads_(n_frames_ * capacity_.size(), 0) {}

std::span<const Load> FrameTrace::frame(std::size_t t) const {
    return std::span<const Load>(loads_).subspan(t * edge_count(), edge_count());
}

std::span<Load> FrameTrace::mutable_frame(std::size_t t) {
    return std::span<Load>(loads_).subspan(t * edge_count(), edge_count());
}

std::vector<double> FrameTrace::congestion_free_fraction() const {
    std::vector<std::size_t> free_frames(edge_count(), 0);
    for (std::size_t t = 0; t < n_frames_; ++t) {
        const auto loads = frame(t);
        for (EdgeId e = 0; e < edge_count(); ++e)
            if (loads[e] <= capacity_[e]) ++free_frames[e];
    }
    std::vector<double> out(edge_count());
    for (EdgeId e = 0; e < edge_count(); ++e)
        out[e] = n_frames_ == 0 ? 1.0
                                : static_cast<double>(free_frames[e]) / static_cast<double>(n_frames_);
    return out;
}

FrameSampler::FrameSampler(const RoutingTable& table, const TrafficConfig& traffic)
    : table_(table), traffic_(traffic) {
    const std::size_t n = table.node_count();
    poisson_index_.assign(n * n, kNoTraffic);
    std::map<double, std::uint32_t> by_rate;
    for (NodeId m = 0; m < n; ++m)
        for (NodeId d = 0; d < n; ++d) {
            if (m == d) continue;
            const double lambda = traffic.lambda(m, d);
            if (lambda <= 0.0 || traffic.q(m, d) <= 0.0) continue;
            auto [it, inserted] = by_rate.try_emplace(lambda, static_cast<std::uint32_t>(poisson_.size()));
            if (inserted) poisson_.emplace_back(lambda);
            poisson_index_[m * n + d] = it->second;
        }
}

void FrameSampler::run(Rng& rng, std::span<Load> loads) {
    const std::size_t n = table_.node_count();
    if (loads.size() != table_.edge_count()) throw InvalidInput("load buffer has the wrong size");
    std::fill(loads.begin(), loads.end(), Load{0});
    // Distributions may cache values between calls; a frame must depend on
    // its own stream only.
    for (auto& d : poisson_) d.reset();
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (NodeId m = 0; m < n; ++m)
        for (NodeId d = 0; d < n; ++d) {
            const std::uint32_t rate = poisson_index_[m * n + d];
            if (rate == kNoTraffic) continue;
            const double q = traffic_.q(m, d);
            if (q < 1.0 && !(unit(rng) < q)) continue;
            const Load batch = poisson_[rate](rng);
            if (batch == 0) continue;
            // The whole batch follows one path.
            table_.sample_path_edges(m, d, rng, path_);
            for (EdgeId e : path_) loads[e] += batch;
        }
}

std::vector<Load> run_frame(const Topology& g, const RoutingTable& table,
                            const TrafficConfig& traffic, Rng& rng) {
    check_shapes(g, table, traffic);
    FrameSampler sampler(table, traffic);
    std::vector<Load> loads(g.edge_count());
    sampler.run(rng, loads);
    return loads;
}

FrameTrace run_simulation(const Topology& g, const RoutingTable& table,
                          const TrafficConfig& traffic, const CapacityPlan& plan,
                          const SimConfig& cfg) {
    check_shapes(g, table, traffic);
    if (plan.edge_count() != g.edge_count())
        throw InvalidInput("capacity plan does not cover the topology's edges");
    if (cfg.n_frames == 0) throw InvalidParameter("simulation needs at least one frame");

    FrameTrace trace(cfg.n_frames, plan.capacity);
    detail::parallel_blocks(cfg.n_frames, cfg.threads,
                            [&](unsigned, std::size_t begin, std::size_t end) {
                                FrameSampler sampler(table, traffic);
                                for (std::size_t t = begin; t < end; ++t) {
                                    Rng rng = make_stream(cfg.seed, t);
                                    sampler.run(rng, trace.mutable_frame(t));
                                }
                            });
    return trace;
}

}  // namespace linkcap
