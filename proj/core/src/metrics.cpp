#include "linkcap/metrics.hpp"

#include <cmath>
#include <string>

#include "linkcap/allocation.hpp"
#include "linkcap/error.hpp"
#include "linkcap/routing.hpp"
#include "parallel.hpp"

namespace linkcap {

namespace {

// Fractions are ratios of frame counts, and C values come from decimal
// input; this absorbs representation error at bin and threshold edges.
constexpr double kEdgeSlack = 1e-9;

double trapezoid(std::span<const double> ys) {
    const double h = 1.0 / static_cast<double>(ys.size() - 1);
    double acc = 0.5 * (ys.front() + ys.back());
    for (std::size_t i = 1; i + 1 < ys.size(); ++i) acc += ys[i];
    return acc * h;
}

}  // namespace

Histogram congestion_free_histogram(std::span<const double> fractions, double bin_width) {
    if (!(bin_width > 0.0 && bin_width <= 1.0))
        throw InvalidParameter("histogram bin width must lie in (0, 1]");
    Histogram h;
    h.bin_width = bin_width;
    const auto bins = static_cast<std::size_t>(std::max(1.0, std::ceil(1.0 / bin_width - kEdgeSlack)));
    h.mass.assign(bins, 0.0);
    if (fractions.empty()) return h;
    const double share = 1.0 / static_cast<double>(fractions.size());
    for (double x : fractions) {
        auto b = static_cast<std::size_t>(std::max(0.0, std::floor(x / bin_width + kEdgeSlack)));
        h.mass[std::min(b, bins - 1)] += share;
    }
    return h;
}

Histogram congestion_free_histogram(const FrameTrace& trace, double bin_width) {
    return congestion_free_histogram(trace.congestion_free_fraction(), bin_width);
}

double global_measure(std::span<const double> fractions, double C) {
    if (fractions.empty()) return 1.0;
    std::size_t meeting = 0;
    for (double x : fractions)
        if (x >= C - kEdgeSlack) ++meeting;
    return static_cast<double>(meeting) / static_cast<double>(fractions.size());
}

double global_measure(const FrameTrace& trace, double C) {
    if (!(C >= 0.0)) throw InvalidParameter("C must be non-negative");
    return global_measure(trace.congestion_free_fraction(), C);
}

std::vector<CurvePoint> global_measure_curve(const FrameTrace& trace, std::size_t steps) {
    if (steps == 0) throw InvalidParameter("curve needs at least one step");
    const std::vector<double> fractions = trace.congestion_free_fraction();
    std::vector<CurvePoint> curve;
    curve.reserve(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        const double C = static_cast<double>(i) / static_cast<double>(steps);
        curve.push_back({C, global_measure(fractions, C)});
    }
    return curve;
}

LambdaPrior poisson_prior(double mean) {
    if (!(mean >= 0.0)) throw InvalidParameter("prior mean must be non-negative");
    return [mean](std::size_t k) { return poisson_pmf(mean, static_cast<long long>(k)); };
}

QDensity uniform_density() {
    return [](double q) { return q >= 0.0 && q <= 1.0 ? 1.0 : 0.0; };
}

std::size_t lambda_support(const LambdaPrior& p_lambda, double tol) {
    if (!(tol > 0.0 && tol < 1.0)) throw InvalidParameter("lambda tail tolerance must lie in (0, 1)");
    constexpr std::size_t kMaxSupport = 10'000'000;
    double cumulative = 0.0;
    for (std::size_t k = 0; k < kMaxSupport; ++k) {
        const double p = p_lambda(k);
        if (!(p >= 0.0) || !std::isfinite(p))
            throw InvalidParameter("lambda prior is negative or non-finite at " + std::to_string(k));
        cumulative += p;
        if (cumulative > 1.0 + 1e-9) throw InvalidParameter("lambda prior mass exceeds 1");
        if (1.0 - cumulative < tol) return k;
    }
    throw InvalidParameter("lambda prior never reaches 1 - tol");
}

std::vector<double> q_grid(std::size_t q_points) {
    if (q_points < 2) throw InvalidParameter("q grid needs at least two points");
    std::vector<double> qs(q_points);
    for (std::size_t i = 0; i < q_points; ++i)
        qs[i] = static_cast<double>(i) / static_cast<double>(q_points - 1);
    return qs;
}

double expected_global_measure(const MeasureFn& g_fn, const LambdaPrior& p_lambda,
                               const QDensity& p_q, const ExpectationGrid& grid) {
    const std::size_t lambda_max = lambda_support(p_lambda, grid.lambda_tail_tol);
    const std::vector<double> qs = q_grid(grid.q_points);

    std::vector<double> density(qs.size());
    for (std::size_t i = 0; i < qs.size(); ++i) {
        density[i] = p_q(qs[i]);
        if (!(density[i] >= 0.0) || !std::isfinite(density[i]))
            throw InvalidParameter("q density is negative or non-finite");
    }
    if (std::abs(trapezoid(density) - 1.0) > 1e-2)
        throw InvalidParameter("q density does not integrate to 1 on the grid");

    double total = 0.0;
    std::vector<double> integrand(qs.size());
    for (std::size_t lambda = 0; lambda <= lambda_max; ++lambda) {
        const double weight = p_lambda(lambda);
        if (weight == 0.0) continue;
        for (std::size_t i = 0; i < qs.size(); ++i)
            integrand[i] = density[i] == 0.0 ? 0.0 : g_fn(lambda, qs[i]) * density[i];
        total += weight * trapezoid(integrand);
    }
    return total;
}

double pipeline_global_measure(const Topology& g, const RoutingTable& table, double lambda,
                               double q, const PipelineConfig& cfg, std::uint64_t seed) {
    const TrafficConfig traffic = TrafficConfig::homogeneous(g.node_count(), lambda, q);
    const std::vector<Pmf> pmfs = all_edge_load_pmfs(table, traffic, cfg.truncation);
    const CapacityPlan plan = allocate(pmfs, cfg.c);
    const FrameTrace trace = run_simulation(g, table, traffic, plan, {cfg.n_frames, seed, 1});
    return global_measure(trace, cfg.C);
}

double topology_expected_measure(const Topology& g, const PipelineConfig& cfg,
                                 const LambdaPrior& p_lambda, const QDensity& p_q,
                                 const ExpectationGrid& grid, std::uint64_t seed,
                                 unsigned threads) {
    const RoutingTable table(g);
    const std::size_t lambda_max = lambda_support(p_lambda, grid.lambda_tail_tol);
    const std::vector<double> qs = q_grid(grid.q_points);
    const std::size_t tasks = (lambda_max + 1) * qs.size();

    std::vector<double> measure(tasks, 1.0);
    detail::parallel_blocks(tasks, threads, [&](unsigned, std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            const std::size_t lambda = t / qs.size();
            measure[t] = pipeline_global_measure(g, table, static_cast<double>(lambda),
                                                 qs[t % qs.size()], cfg, derive_seed(seed, t));
        }
    });

    const MeasureFn lookup = [&](std::size_t lambda, double q) {
        const auto qi = static_cast<std::size_t>(std::llround(q * static_cast<double>(qs.size() - 1)));
        return measure[lambda * qs.size() + qi];
    };
    return expected_global_measure(lookup, p_lambda, p_q, grid);
}

SweepConfig SweepConfig::desk_scale() {
    SweepConfig cfg;
    cfg.n = 10;
    cfg.grid = {1e-2, 6};
    cfg.pipeline.n_frames = 30;
    return cfg;
}

SweepConfig SweepConfig::paper_scale() {
    SweepConfig cfg;
    cfg.n = 20;
    cfg.grid = {1e-3, 11};
    cfg.pipeline.n_frames = 90;
    return cfg;
}

std::vector<SweepRecord> topology_sweep(const SweepConfig& cfg) {
    if (cfg.n < 2) throw InvalidParameter("sweep requires n >= 2");
    const LambdaPrior p_lambda = poisson_prior(cfg.lambda_mean);
    const QDensity p_q = uniform_density();

    std::vector<SweepRecord> records;
    for (std::size_t s = 0; s < cfg.sequences; ++s) {
        const std::uint64_t sequence_seed = derive_seed(cfg.seed, s);
        Rng removal = make_stream(sequence_seed, 0);
        Topology g = complete_graph(cfg.n);
        for (std::size_t step = 0; is_connected(g); ++step) {
            SweepRecord r;
            r.sequence = s;
            r.step = step;
            r.stats = graph_stats(g);
            r.expected_measure = topology_expected_measure(
                g, cfg.pipeline, p_lambda, p_q, cfg.grid, derive_seed(sequence_seed, step + 1),
                cfg.threads);
            records.push_back(r);
            if (g.edge_count() == 0) break;
            g = remove_random_edge(g, removal);
        }
    }
    return records;
}

}  // namespace linkcap
