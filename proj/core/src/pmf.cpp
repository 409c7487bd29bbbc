#include "linkcap/pmf.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "linkcap/error.hpp"
#include "parallel.hpp"

namespace linkcap {

namespace {

void check_lambda_q(double lambda, double q) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw InvalidParameter("lambda must be finite and non-negative");
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidParameter("q must lie in [0, 1]");
}

void check_fraction(double f) {
    if (!(f >= 0.0 && f <= 1.0)) throw InvalidParameter("routing fraction must lie in [0, 1]");
}

long long rounded(double lambda) { return std::llround(lambda); }

}  // namespace

Pmf Pmf::from_mass(std::vector<double> mass) {
    Pmf p;
    p.mass = std::move(mass);
    p.truncation_deficit = std::max(0.0, 1.0 - p.total());
    return p;
}

Pmf Pmf::point_mass(std::size_t k) {
    std::vector<double> mass(k + 1, 0.0);
    mass[k] = 1.0;
    return from_mass(std::move(mass));
}

double Pmf::total() const noexcept { return std::accumulate(mass.begin(), mass.end(), 0.0); }

double poisson_pmf(double lambda, long long k) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw InvalidParameter("lambda must be finite and non-negative");
    if (k < 0) throw InvalidParameter("packet count must be non-negative");
    if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
    if (k == 0) return std::exp(-lambda);
    const double kd = static_cast<double>(k);
    return std::exp(kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0));
}

double phi(double lambda, double q, long long k) {
    check_lambda_q(lambda, q);
    if (k < 0) throw InvalidParameter("packet count must be non-negative");
    if (k == 0) {
        const double p0 = poisson_pmf(lambda, 0);
        return (1.0 - p0) * (1.0 - q) + p0;
    }
    return q * poisson_pmf(lambda, k);
}

double omega(double lambda, double q, double f, long long k) {
    check_fraction(f);
    const double emitted = phi(lambda, q, k);
    return k == 0 ? f * emitted + 1.0 - f : f * emitted;
}

std::size_t choose_truncation_length(double lambda, double q, double f, double epsilon) {
    check_lambda_q(lambda, q);
    check_fraction(f);
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidParameter("epsilon must lie in (0, 1)");
    if (lambda == 0.0) return 1;
    const long long mode = rounded(lambda);
    const double threshold = epsilon * omega(lambda, q, f, mode);
    long long k = mode;
    while (omega(lambda, q, f, k) > threshold) ++k;
    return static_cast<std::size_t>(k + 1);
}

bool satisfies_truncation(std::size_t length, double lambda, double q, double f,
                          double epsilon) {
    if (length == 0) return false;
    if (lambda == 0.0) return true;
    const long long mode = rounded(lambda);
    if (static_cast<long long>(length) < mode + 1) return false;
    return omega(lambda, q, f, static_cast<long long>(length) - 1) <=
           epsilon * omega(lambda, q, f, mode);
}

std::size_t truncation_length(const TruncationPolicy& policy, double lambda, double q, double f) {
    if (policy.fixed_length) {
        if (*policy.fixed_length == 0) throw InvalidParameter("truncation length must be >= 1");
        return *policy.fixed_length;
    }
    return choose_truncation_length(lambda, q, f, policy.epsilon);
}

std::vector<double> omega_vector(double lambda, double q, double f, std::size_t length) {
    std::vector<double> v(length);
    for (std::size_t k = 0; k < length; ++k) v[k] = omega(lambda, q, f, static_cast<long long>(k));
    return v;
}

std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) return {};
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        double* row = out.data() + i;
        for (std::size_t j = 0; j < b.size(); ++j) row[j] += ai * b[j];
    }
    return out;
}

Pmf edge_load_pmf(EdgeId edge, const RoutingTable& table, const TrafficConfig& traffic,
                  const TruncationPolicy& policy) {
    if (edge >= table.edge_count())
        throw InvalidInput("edge " + std::to_string(edge) + " is not in the topology");
    if (traffic.node_count() != table.node_count())
        throw InvalidInput("traffic config is sized for a different topology");

    std::vector<double> load{1.0};
    for (const Contribution& c : table.contributions(edge)) {
        const double lambda = traffic.lambda(c.source, c.target);
        const double q = traffic.q(c.source, c.target);
        const std::size_t length = truncation_length(policy, lambda, q, c.fraction);
        const std::vector<double> term = omega_vector(lambda, q, c.fraction, length);
        load = convolve(load, term);
    }
    return Pmf::from_mass(std::move(load));
}

std::vector<Pmf> all_edge_load_pmfs(const RoutingTable& table, const TrafficConfig& traffic,
                                     const TruncationPolicy& policy, unsigned threads) {
    std::vector<Pmf> out(table.edge_count());
    detail::parallel_blocks(out.size(), threads, [&](unsigned, std::size_t begin, std::size_t end) {
        for (std::size_t e = begin; e < end; ++e) out[e] = edge_load_pmf(e, table, traffic, policy);
    });
    return out;
}

PmfMoments pmf_stats(const Pmf& p) {
    const double total = p.total();
    if (!(total > 0.0)) throw InvalidInput("pmf has zero total mass");
    double mean = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) mean += static_cast<double>(k) * p.mass[k];
    mean /= total;
    double var = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double d = static_cast<double>(k) - mean;
        var += d * d * p.mass[k];
    }
    return {mean, std::sqrt(var / total)};
}

nlohmann::json pmf_to_json(const Pmf& p) {
    return {{"mass", p.mass}, {"total", p.total()}, {"truncation_deficit", p.truncation_deficit}};
}

}  // namespace linkcap
