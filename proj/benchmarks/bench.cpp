#include <benchmark/benchmark.h>

#include <vector>

#include "linkcap/allocation.hpp"
#include "linkcap/graph.hpp"
#include "linkcap/pmf.hpp"
#include "linkcap/routing.hpp"
#include "linkcap/simulator.hpp"

using namespace linkcap;

static void BM_Convolve(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> a = omega_vector(4.0, 1.0, 0.5, n);
    std::vector<double> b(n * 10, 1.0 / static_cast<double>(n * 10));
    for (auto _ : state) benchmark::DoNotOptimize(convolve(a, b));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Convolve)->Arg(15)->Arg(60)->Arg(240)->Complexity(benchmark::oNSquared);

static void BM_RoutingTable(benchmark::State& state) {
    Topology g = generate_barabasi_albert(static_cast<std::size_t>(state.range(0)), 3, 1);
    for (auto _ : state) benchmark::DoNotOptimize(RoutingTable(g));
}
BENCHMARK(BM_RoutingTable)->Arg(30)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_AllEdgePmfs(benchmark::State& state) {
    Topology g = generate_barabasi_albert(30, 4, 1);
    RoutingTable t(g);
    const auto traffic = TrafficConfig::homogeneous(30, 4.0, 1.0);
    const TruncationPolicy policy{0.001, state.range(0) > 0
                                             ? std::optional<std::size_t>(state.range(0))
                                             : std::nullopt};
    for (auto _ : state) benchmark::DoNotOptimize(all_edge_load_pmfs(t, traffic, policy));
}
BENCHMARK(BM_AllEdgePmfs)->Arg(0)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_SimulateFrames(benchmark::State& state) {
    Topology g = generate_barabasi_albert(30, 4, 1);
    RoutingTable t(g);
    const auto traffic = TrafficConfig::homogeneous(30, 4.0, 1.0);
    const CapacityPlan plan = unlimited_plan(g.edge_count());
    const auto frames = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_simulation(g, t, traffic, plan, {frames, 7, 1}));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateFrames)->Arg(90)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
