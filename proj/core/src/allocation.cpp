#include "linkcap/allocation.hpp"

#include <algorithm>
#include <string>

#include "linkcap/error.hpp"

namespace linkcap {

namespace {

void check_criterion(double c) {
    if (!(c > 0.0 && c < 1.0)) throw InvalidParameter("criterion c must lie in (0, 1)");
}

}  // namespace

double cmf(const Pmf& p, std::size_t k) {
    const double total = p.total();
    if (!(total > 0.0)) throw InvalidInput("pmf has zero total mass");
    double running = 0.0;
    const std::size_t last = std::min(k + 1, p.size());
    for (std::size_t j = 0; j < last; ++j) running += p.mass[j];
    return running / total;
}

std::size_t quantile(const Pmf& p, double c, EdgeId edge) {
    check_criterion(c);
    const double total = p.total();
    if (total < c) throw TruncationInsufficient(edge, total, c);
    double running = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        running += p.mass[k];
        if (running / total >= c) return k;
    }
    return p.size() - 1;
}

CapacityPlan allocate(std::span<const Pmf> pmfs, std::span<const double> criteria) {
    if (criteria.size() != pmfs.size())
        throw InvalidInput("criteria and pmfs cover different edge sets");
    CapacityPlan plan;
    plan.capacity.resize(pmfs.size());
    plan.criterion.assign(criteria.begin(), criteria.end());
    for (EdgeId e = 0; e < pmfs.size(); ++e) plan.capacity[e] = quantile(pmfs[e], criteria[e], e);
    return plan;
}

CapacityPlan allocate(std::span<const Pmf> pmfs, double c) {
    check_criterion(c);
    const std::vector<double> criteria(pmfs.size(), c);
    CapacityPlan plan = allocate(pmfs, std::span<const double>(criteria));
    plan.provenance["criterion"] = c;
    return plan;
}

CapacityPlan unlimited_plan(std::size_t edge_count) {
    CapacityPlan plan;
    plan.capacity.assign(edge_count, kUnlimitedCapacity);
    plan.criterion.assign(edge_count, 1.0);
    return plan;
}

std::vector<PlanRow> plan_report(const CapacityPlan& plan, std::span<const Pmf> pmfs,
                                 std::span<const double> centrality) {
    if (plan.edge_count() != pmfs.size() || centrality.size() != pmfs.size())
        throw InvalidInput("plan, pmfs and centrality cover different edge sets");
    const std::vector<EdgeId> order = rank_by_centrality(centrality);
    std::vector<std::size_t> rank(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r + 1;

    std::vector<PlanRow> rows;
    rows.reserve(pmfs.size());
    for (EdgeId e = 0; e < pmfs.size(); ++e) {
        const PmfMoments m = pmf_stats(pmfs[e]);
        const Capacity cap = plan.capacity[e];
        const double exceed =
            cap >= pmfs[e].size() ? 0.0 : 1.0 - cmf(pmfs[e], static_cast<std::size_t>(cap));
        rows.push_back({e, cap, m.mean, m.std, exceed, rank[e]});
    }
    return rows;
}

nlohmann::json plan_to_json(const Topology& g, const CapacityPlan& plan) {
    if (plan.edge_count() != g.edge_count())
        throw InvalidInput("plan does not match the topology's edge set");
    nlohmann::json edges = nlohmann::json::array();
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        edges.push_back({{"u", g.edge(e).u},
                         {"v", g.edge(e).v},
                         {"capacity", plan.capacity[e]},
                         {"criterion", plan.criterion[e]}});
    return {{"version", 1},
            {"n", g.node_count()},
            {"edges", std::move(edges)},
            {"provenance", plan.provenance}};
}

CapacityPlan plan_from_json(const nlohmann::json& doc, const Topology& g) {
    try {
        if (doc.at("version").get<int>() != 1) throw InvalidInput("unsupported plan version");
        if (doc.at("n").get<std::size_t>() != g.node_count())
            throw InvalidInput("plan node count does not match the topology");
        const auto& edges = doc.at("edges");
        if (edges.size() != g.edge_count())
            throw InvalidInput("plan edge count does not match the topology");
        CapacityPlan plan;
        plan.capacity.reserve(edges.size());
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const Edge stored(edges[e].at("u").get<NodeId>(), edges[e].at("v").get<NodeId>());
            if (!(stored == g.edge(e)))
                throw InvalidInput("plan edge " + (std::to_string(stored.u) + "-" + std::to_string(stored.v)) +
                                   " does not match the topology");
            plan.capacity.push_back(edges[e].at("capacity").get<Capacity>());
            plan.criterion.push_back(edges[e].at("criterion").get<double>());
        }
        plan.provenance = doc.value("provenance", nlohmann::json::object());
        return plan;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed plan document: ") + e.what());
    }
}

}  // namespace linkcap
