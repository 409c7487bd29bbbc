#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "linkcap/graph.hpp"
#include "linkcap/pmf.hpp"
#include "linkcap/simulator.hpp"

namespace linkcap {

/// Normalized histogram of per-edge congestion-free fractions over [0,1].
/// Bin b covers [b*w, (b+1)*w); the last bin is closed and holds 1.0.
struct Histogram {
    double bin_width = 0.1;
    std::vector<double> mass;

    double bin_lower(std::size_t b) const { return static_cast<double>(b) * bin_width; }
};

Histogram congestion_free_histogram(std::span<const double> fractions, double bin_width = 0.1);
Histogram congestion_free_histogram(const FrameTrace& trace, double bin_width = 0.1);

/// Fraction of edges congestion-free in at least C of the observed frames,
/// computed from the raw per-edge fractions.
double global_measure(std::span<const double> fractions, double C);
double global_measure(const FrameTrace& trace, double C);

struct CurvePoint {
    double C;
    double g;
};

/// g on C = 0, 1/steps, ..., 1.
std::vector<CurvePoint> global_measure_curve(const FrameTrace& trace, std::size_t steps = 20);

using LambdaPrior = std::function<double(std::size_t)>;
using QDensity = std::function<double(double)>;
using MeasureFn = std::function<double(std::size_t lambda, double q)>;

LambdaPrior poisson_prior(double mean);
QDensity uniform_density();

struct ExpectationGrid {
    double lambda_tail_tol = 1e-3;  ///< stop once remaining prior mass < tol
    std::size_t q_points = 11;      ///< composite trapezoid over [0,1]
};

/// Smallest lambda_max such that the prior mass on 0..lambda_max is at least
/// 1 - tol. Throws InvalidParameter for a negative or over-unity prior.
std::size_t lambda_support(const LambdaPrior& p_lambda, double tol);

/// The q grid used by the expectation: q_i = i / (q_points - 1).
std::vector<double> q_grid(std::size_t q_points);

/// sum_lambda p(lambda) integral_0^1 g(lambda,q) p(q) dq over the truncated
/// lambda support and the q grid. Throws InvalidParameter if p_q is negative
/// somewhere on the grid or does not integrate to 1 (within 1e-2).
double expected_global_measure(const MeasureFn& g_fn, const LambdaPrior& p_lambda,
                               const QDensity& p_q, const ExpectationGrid& grid = {});

/// Parameters of the allocate-then-simulate pipeline behind g(lambda, q).
struct PipelineConfig {
    double c = 0.85;
    double C = 0.8;
    std::size_t n_frames = 30;
    TruncationPolicy truncation{};
};

/// g for homogeneous (lambda, q) traffic on `g`: pmfs, allocation at c,
/// simulation, then the fraction of edges congestion-free for >= C of frames.
double pipeline_global_measure(const Topology& g, const RoutingTable& table, double lambda,
                               double q, const PipelineConfig& cfg, std::uint64_t seed);

/// Expected global measure of one topology over the priors. Pipeline
/// evaluations run on `threads` workers; the result does not depend on it.
double topology_expected_measure(const Topology& g, const PipelineConfig& cfg,
                                 const LambdaPrior& p_lambda, const QDensity& p_q,
                                 const ExpectationGrid& grid, std::uint64_t seed,
                                 unsigned threads = 1);

struct SweepConfig {
    std::size_t n = 10;
    PipelineConfig pipeline{};
    double lambda_mean = 4.0;
    ExpectationGrid grid{};
    std::uint64_t seed = 0;
    std::size_t sequences = 1;
    unsigned threads = 1;

    /// n = 10, 6-point q grid, lambda tail 1e-2, 30 frames.
    static SweepConfig desk_scale();
    /// n = 20, 11-point q grid, lambda tail 1e-3, 90 frames.
    static SweepConfig paper_scale();
};

struct SweepRecord {
    std::size_t sequence = 0;
    std::size_t step = 0;  ///< edges removed so far
    GraphStats stats;
    double expected_measure = 0.0;
};

/// Starting from the complete graph, removes random edges one at a time and
/// records every connected topology (including the start) until the first
/// disconnection, for each of cfg.sequences independent removal orders.
std::vector<SweepRecord> topology_sweep(const SweepConfig& cfg);

}  // namespace linkcap
