#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "linkcap/graph.hpp"

namespace linkcap {

/// Edge-list text format.
///
///   file     := [header] { line }
///   header   := JSON object on the first non-blank line, with at least
///               {"n": <node count>}; any other keys are kept as metadata
///   line     := blank | comment | edge
///   comment  := '#' { any char }
///   edge     := node ws node [ws] [comment]
///   node     := decimal integer in [0, n)
///
/// Without a header the node count is 1 + the largest id mentioned.
struct GraphDocument {
    Topology topology;
    nlohmann::json metadata = nlohmann::json::object();
};

GraphDocument read_graph(std::istream& in);
GraphDocument read_graph_file(const std::string& path);

/// Writes the header variant. `metadata` must be an object; "n" is set.
void write_graph(std::ostream& out, const Topology& g,
                 const nlohmann::json& metadata = nlohmann::json::object());

std::string edge_label(const Edge& e);

}  // namespace linkcap
