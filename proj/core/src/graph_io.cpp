#include "linkcap/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "linkcap/error.hpp"

namespace linkcap {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

GraphDocument read_graph(std::istream& in) {
    GraphDocument doc;
    std::optional<std::size_t> declared_n;
    std::vector<Edge> edges;
    std::set<std::pair<long long, long long>> seen;
    std::size_t max_id = 0;
    bool any_edge = false;
    bool first_content = true;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (first_content && line.front() == '{') {
            first_content = false;
            try {
                doc.metadata = nlohmann::json::parse(line);
            } catch (const nlohmann::json::exception& e) {
                throw InvalidInput("line " + std::to_string(line_no) + ": bad JSON header: " +
                                   e.what());
            }
            if (!doc.metadata.is_object() || !doc.metadata.contains("n") ||
                !doc.metadata["n"].is_number_unsigned())
                throw InvalidInput("line " + std::to_string(line_no) +
                                   ": JSON header must be an object with unsigned \"n\"");
            declared_n = doc.metadata["n"].get<std::size_t>();
            continue;
        }
        first_content = false;
        if (line.front() == '#') continue;
        if (auto hash = line.find('#'); hash != std::string::npos) line = trim(line.substr(0, hash));

        std::istringstream fields(line);
        long long a = -1, b = -1;
        std::string extra;
        if (!(fields >> a >> b) || (fields >> extra) || a < 0 || b < 0)
            throw InvalidInput("line " + std::to_string(line_no) + ": expected 'i j', got '" +
                               line + "'");
        const std::string at = "line " + std::to_string(line_no) + ": ";
        if (a == b) throw InvalidInput(at + "self-loop at node " + std::to_string(a));
        if (declared_n && static_cast<std::size_t>(std::max(a, b)) >= *declared_n)
            throw InvalidInput(at + "node id " + std::to_string(std::max(a, b)) +
                               " exceeds header n=" + std::to_string(*declared_n));
        if (!seen.emplace(std::min(a, b), std::max(a, b)).second)
            throw InvalidInput(at + "duplicate edge " + std::to_string(std::min(a, b)) + "-" +
                               std::to_string(std::max(a, b)));
        edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
        max_id = std::max<std::size_t>(max_id, static_cast<std::size_t>(std::max(a, b)));
        any_edge = true;
    }

    std::size_t n = declared_n.value_or(any_edge ? max_id + 1 : 0);
    if (any_edge && max_id >= n)
        throw InvalidInput("node id " + std::to_string(max_id) + " exceeds header n=" +
                           std::to_string(n));
    doc.topology = Topology(n, std::move(edges));
    doc.metadata["n"] = n;
    return doc;
}

GraphDocument read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open graph file '" + path + "'");
    return read_graph(in);
}

void write_graph(std::ostream& out, const Topology& g, const nlohmann::json& metadata) {
    nlohmann::json header = metadata.is_object() ? metadata : nlohmann::json::object();
    header["n"] = g.node_count();
    out << header.dump() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

std::string edge_label(const Edge& e) { return std::to_string(e.u) + "-" + std::to_string(e.v); }

}  // namespace linkcap
