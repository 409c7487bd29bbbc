#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "linkcap/allocation.hpp"
#include "linkcap/graph.hpp"
#include "linkcap/rng.hpp"
#include "linkcap/routing.hpp"
#include "linkcap/traffic.hpp"

namespace linkcap {

using Load = std::uint32_t;

struct SimConfig {
    std::size_t n_frames = 1;
    std::uint64_t seed = 0;
    /// Worker threads across frames (0 = hardware concurrency). The trace
    /// is identical for any value.
    unsigned threads = 1;
};

/// Per-frame per-edge loads of a simulation, plus the capacities they were
/// checked against. An edge is congested in a frame iff load > capacity.
class FrameTrace {
   public:
    FrameTrace(std::size_t n_frames, std::vector<Capacity> capacity);

    std::size_t frame_count() const noexcept { return n_frames_; }
    std::size_t edge_count() const noexcept { return capacity_.size(); }

    Load load(std::size_t frame, EdgeId edge) const { return loads_[frame * edge_count() + edge]; }
    std::span<const Load> frame(std::size_t frame) const;
    std::span<Load> mutable_frame(std::size_t frame);

    bool congested(std::size_t frame, EdgeId edge) const {
        return load(frame, edge) > capacity_[edge];
    }

    std::span<const Capacity> capacity() const noexcept { return capacity_; }

    /// Fraction of frames in which each edge stayed at or below capacity.
    std::vector<double> congestion_free_fraction() const;

    std::string rng_algorithm() const { return std::string(kRngAlgorithm); }

    friend bool operator==(const FrameTrace&, const FrameTrace&) = default;

   private:
    std::size_t n_frames_;
    std::vector<Capacity> capacity_;
    std::vector<Load> loads_;
};

/// Reusable per-worker sampling state for one (table, traffic) pair.
class FrameSampler {
   public:
    FrameSampler(const RoutingTable& table, const TrafficConfig& traffic);

    /// One frame of the generation and routing model. Every ordered pair
    /// activates with probability q; an active pair draws k ~ Poisson(lambda)
    /// and sends the whole batch along one uniformly chosen shortest path.
    /// `loads` must have one slot per edge; it is overwritten.
    void run(Rng& rng, std::span<Load> loads);

   private:
    const RoutingTable& table_;
    const TrafficConfig& traffic_;
    std::vector<std::poisson_distribution<Load>> poisson_;
    std::vector<std::uint32_t> poisson_index_;  ///< per ordered pair
    std::vector<EdgeId> path_;
};

/// Convenience single-frame entry point for tests; returns per-edge loads.
std::vector<Load> run_frame(const Topology& g, const RoutingTable& table,
                            const TrafficConfig& traffic, Rng& rng);

/// Independent frames; frame t draws from substream t of cfg.seed.
/// Throws InvalidInput if the plan or table does not match `g`, and
/// InvalidParameter for zero frames.
FrameTrace run_simulation(const Topology& g, const RoutingTable& table,
                          const TrafficConfig& traffic, const CapacityPlan& plan,
                          const SimConfig& cfg);

}  // namespace linkcap
