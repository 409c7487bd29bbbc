#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "linkcap/graph.hpp"
#include "linkcap/routing.hpp"
#include "linkcap/traffic.hpp"

namespace linkcap {

/// Finite pmf over packet counts k = 0 .. size()-1. Mass beyond the vector
/// is lost to truncation and accounted for in `truncation_deficit`.
struct Pmf {
    std::vector<double> mass;
    double truncation_deficit = 0.0;

    static Pmf from_mass(std::vector<double> mass);
    static Pmf point_mass(std::size_t k);

    std::size_t size() const noexcept { return mass.size(); }
    double total() const noexcept;
};

struct TruncationPolicy {
    double epsilon = 0.001;
    /// Overrides the computed per-pair length when set.
    std::optional<std::size_t> fixed_length;
};

/// lambda^k e^-lambda / k!, evaluated in log space.
double poisson_pmf(double lambda, long long k);

/// Packets emitted by an ordered pair in one frame: activation with
/// probability q, then Poisson(lambda).
double phi(double lambda, double q, long long k);

/// Packets a pair contributes to one edge when a fraction f of its batches
/// crosses that edge.
double omega(double lambda, double q, double f, long long k);

/// Vector length Q for one pair's contribution: the smallest Q >= round(lambda)+1
/// with omega(Q-1) <= epsilon * omega(round(lambda)). Returns 1 for lambda == 0.
std::size_t choose_truncation_length(double lambda, double q, double f, double epsilon);

/// True if length Q meets the truncation condition above (any Q past the
/// computed minimum does, since omega is decreasing beyond the mode).
bool satisfies_truncation(std::size_t length, double lambda, double q, double f, double epsilon);

/// Length the policy assigns to one contributing pair.
std::size_t truncation_length(const TruncationPolicy& policy, double lambda, double q, double f);

/// omega(k) for k = 0 .. length-1.
std::vector<double> omega_vector(double lambda, double q, double f, std::size_t length);

/// Schoolbook linear convolution; result size a.size() + b.size() - 1.
std::vector<double> convolve(std::span<const double> a, std::span<const double> b);

/// Load pmf of one edge: the convolution of the omega vectors of every pair
/// in the edge's contributing set. Result length is sum(Q_xy - 1) + 1.
/// Throws InvalidInput for an unknown edge or a traffic config sized for a
/// different graph.
Pmf edge_load_pmf(EdgeId edge, const RoutingTable& table, const TrafficConfig& traffic,
                  const TruncationPolicy& policy);

/// edge_load_pmf for every edge, indexed by edge id. Runs `threads`
/// workers (0 = hardware concurrency); output does not depend on it.
std::vector<Pmf> all_edge_load_pmfs(const RoutingTable& table, const TrafficConfig& traffic,
                                     const TruncationPolicy& policy, unsigned threads = 1);

struct PmfMoments {
    double mean = 0.0;
    double std = 0.0;
};

/// Moments of the renormalized pmf. Throws InvalidInput on zero mass.
PmfMoments pmf_stats(const Pmf& p);

nlohmann::json pmf_to_json(const Pmf& p);

}  // namespace linkcap
