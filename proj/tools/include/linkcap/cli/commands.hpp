#pragma once

#include <string>
#include <vector>

#include "linkcap/cli/config.hpp"
#include "linkcap/graph.hpp"
#include "linkcap/traffic.hpp"

namespace linkcap::cli {

struct CommandResult {
    std::vector<std::string> files;     ///< written, relative to cfg.out
    std::vector<std::string> warnings;
};

/// Runs one command. Input problems (unreadable graph, plan or traffic
/// files) surface as ConfigError; numeric failures as linkcap::Error.
CommandResult run_command(const std::string& name, const RunConfig& cfg);

CommandResult run_pmf(const RunConfig& cfg);
CommandResult run_allocate(const RunConfig& cfg);
CommandResult run_simulate(const RunConfig& cfg);
CommandResult run_sweep(const RunConfig& cfg);
CommandResult run_stats(const RunConfig& cfg);

/// The configured topology: generated or read from graph.file.
Topology build_topology(const RunConfig& cfg);

/// Homogeneous (cfg.lambda, q) traffic, with the rows of
/// traffic.matrix_file (`m n lambda q`, `#` comments) laid over it.
TrafficConfig build_traffic(const RunConfig& cfg, std::size_t node_count, double q);

/// Shortest decimal form that reads back to the same double.
std::string format_number(double x);

}  // namespace linkcap::cli
