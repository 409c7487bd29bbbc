#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "linkcap/pmf.hpp"

namespace linkcap::cli {

/// A configuration problem, reported with the offending field path.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kConfigVersion = 1;

struct GraphSource {
    std::string generator = "barabasi_albert";  ///< barabasi_albert | complete | file
    std::size_t n = 30;
    std::size_t m = 4;
    std::optional<std::uint64_t> seed;
    std::string file;
};

struct SweepSettings {
    std::string preset = "desk";  ///< desk | paper
    std::optional<std::size_t> n;
    std::optional<std::size_t> q_grid;
    std::optional<double> lambda_tail_tol;
    std::optional<std::size_t> frames;
    std::size_t sequences = 1;
};

/// Every setting a command can read. Defaults < config file < flags.
struct RunConfig {
    GraphSource graph;
    double lambda = 4.0;
    double q = 1.0;
    std::string traffic_matrix_file;
    std::vector<double> q_values;  ///< empty = {q}
    double c = 0.85;
    double C = 0.8;
    double epsilon = 0.001;
    std::optional<std::size_t> truncation_length;
    double lambda_tail_tol = 1e-3;
    std::size_t q_grid = 11;
    std::vector<std::size_t> frames{30, 90};
    std::optional<std::uint64_t> seed;
    std::string out = "out";
    std::size_t top_k = 3;
    double histogram_bin = 0.1;
    std::size_t curve_steps = 20;
    SweepSettings sweep;
    unsigned threads = 1;
    bool dump_loads = false;
    bool dump_routing = false;
    std::string plan_file;

    TruncationPolicy truncation() const { return {epsilon, truncation_length}; }
    std::vector<double> effective_q_values() const {
        return q_values.empty() ? std::vector<double>{q} : q_values;
    }
};

/// Applies a config document on top of `base`. Unknown keys, wrong types
/// and a version other than kConfigVersion raise ConfigError.
RunConfig apply_config(RunConfig base, const nlohmann::json& doc);
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Range checks shared by every command.
void validate(const RunConfig& cfg, bool needs_seed);

/// Whether the command draws random numbers under this configuration.
bool needs_seed(const RunConfig& cfg, const std::string& command);

nlohmann::json config_to_json(const RunConfig& cfg);

}  // namespace linkcap::cli
