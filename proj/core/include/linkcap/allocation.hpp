#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "linkcap/graph.hpp"
#include "linkcap/pmf.hpp"

namespace linkcap {

using Capacity = std::uint64_t;

/// Capacity that no frame load can exceed.
inline constexpr Capacity kUnlimitedCapacity = std::numeric_limits<Capacity>::max();

/// Cumulative mass of the renormalized pmf up to and including k.
double cmf(const Pmf& p, std::size_t k);

/// Smallest k with cmf(p, k) >= c. Throws TruncationInsufficient (edge = `edge`)
/// when the pmf retains less than c of its mass.
std::size_t quantile(const Pmf& p, double c, EdgeId edge = 0);

struct CapacityPlan {
    std::vector<Capacity> capacity;   ///< indexed by edge id
    std::vector<double> criterion;    ///< per-edge c
    nlohmann::json provenance = nlohmann::json::object();

    std::size_t edge_count() const noexcept { return capacity.size(); }
};

/// Per-edge minimal capacity meeting the homogeneous criterion c in (0,1).
CapacityPlan allocate(std::span<const Pmf> pmfs, double c);

/// Heterogeneous variant; `criteria` is indexed like `pmfs`.
CapacityPlan allocate(std::span<const Pmf> pmfs, std::span<const double> criteria);

/// A plan that never congests; used as the simulator's no-limit sentinel.
CapacityPlan unlimited_plan(std::size_t edge_count);

struct PlanRow {
    EdgeId edge;
    Capacity capacity;
    double mean;
    double std;
    double exceedance;        ///< 1 - cmf(capacity)
    std::size_t centrality_rank;  ///< 1 = most central
};

/// Throws InvalidInput if plan, pmfs and centrality cover different edge sets.
std::vector<PlanRow> plan_report(const CapacityPlan& plan, std::span<const Pmf> pmfs,
                                 std::span<const double> centrality);

nlohmann::json plan_to_json(const Topology& g, const CapacityPlan& plan);

/// Parses plan_to_json output and checks it against `g`. Throws
/// InvalidInput when the edge lists differ.
CapacityPlan plan_from_json(const nlohmann::json& doc, const Topology& g);

}  // namespace linkcap
