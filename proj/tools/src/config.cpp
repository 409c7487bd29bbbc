#include "linkcap/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <string_view>
#include <type_traits>

namespace linkcap::cli {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::string_view where,
                    std::initializer_list<std::string_view> known) {
    if (!obj.is_object()) throw ConfigError(std::string(where) + ": expected an object");
    for (const auto& item : obj.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
            throw ConfigError(std::string(where) + ": unknown field '" + item.key() + "'");
        }
    }
}

std::string path_of(std::string_view where, std::string_view key) {
    return where.empty() ? std::string(key) : std::string(where) + "." + std::string(key);
}

// Typed reads. nlohmann happily converts 2.5 to size_t, hence the checks.
template <typename T>
T read(const json& obj, std::string_view where, std::string_view key) {
    const json& v = obj.at(std::string(key));
    const std::string at = path_of(where, key);
    if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw ConfigError(at + ": expected true or false");
        return v.get<bool>();
    } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) throw ConfigError(at + ": expected a string");
        return v.get<std::string>();
    } else if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) throw ConfigError(at + ": expected a number");
        return v.get<T>();
    } else {
        static_assert(std::is_unsigned_v<T>);
        if (!v.is_number_unsigned()) throw ConfigError(at + ": expected a non-negative integer");
        const auto raw = v.get<std::uint64_t>();
        if (raw > std::numeric_limits<T>::max()) throw ConfigError(at + ": value too large");
        return static_cast<T>(raw);
    }
}

template <typename T>
void maybe(const json& obj, std::string_view where, std::string_view key, T& dst) {
    if (obj.contains(std::string(key))) dst = read<T>(obj, where, key);
}

template <typename T>
void maybe(const json& obj, std::string_view where, std::string_view key, std::optional<T>& dst) {
    if (!obj.contains(std::string(key))) return;
    if (obj.at(std::string(key)).is_null()) {
        dst.reset();
    } else {
        dst = read<T>(obj, where, key);
    }
}

template <typename T>
void maybe_list(const json& obj, std::string_view where, std::string_view key, std::vector<T>& dst) {
    if (!obj.contains(std::string(key))) return;
    const json& v = obj.at(std::string(key));
    if (!v.is_array()) throw ConfigError(path_of(where, key) + ": expected an array");
    std::vector<T> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        json wrap = {{"x", v[i]}};
        out.push_back(read<T>(wrap, path_of(where, key) + "[" + std::to_string(i) + "]", "x"));
    }
    dst = std::move(out);
}

void apply_graph(GraphSource& g, const json& obj) {
    reject_unknown(obj, "graph", {"generator", "n", "m", "seed", "file"});
    maybe(obj, "graph", "generator", g.generator);
    maybe(obj, "graph", "n", g.n);
    maybe(obj, "graph", "m", g.m);
    maybe(obj, "graph", "seed", g.seed);
    maybe(obj, "graph", "file", g.file);
    if (obj.contains("file") && !obj.contains("generator")) g.generator = "file";
}

void apply_sweep(SweepSettings& s, const json& obj) {
    reject_unknown(obj, "sweep",
                   {"preset", "n", "q_grid", "lambda_tail_tol", "frames", "sequences"});
    maybe(obj, "sweep", "preset", s.preset);
    maybe(obj, "sweep", "n", s.n);
    maybe(obj, "sweep", "q_grid", s.q_grid);
    maybe(obj, "sweep", "lambda_tail_tol", s.lambda_tail_tol);
    maybe(obj, "sweep", "frames", s.frames);
    maybe(obj, "sweep", "sequences", s.sequences);
}

void require_range(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

}  // namespace

RunConfig apply_config(RunConfig cfg, const json& doc) {
    reject_unknown(doc, "config",
                   {"version", "graph", "traffic", "q_values", "c", "C", "epsilon",
                    "truncation_length", "lambda_tail_tol", "q_grid", "frames", "seed", "out",
                    "top_k", "histogram_bin", "curve_steps", "sweep", "threads", "dump_loads",
                    "dump_routing", "plan"});
    if (!doc.contains("version")) throw ConfigError("config: missing field 'version'");
    if (read<std::uint64_t>(doc, "", "version") != kConfigVersion) {
        throw ConfigError("version: unsupported config version (expected " +
                          std::to_string(kConfigVersion) + ")");
    }
    if (doc.contains("graph")) apply_graph(cfg.graph, doc.at("graph"));
    if (doc.contains("traffic")) {
        const json& t = doc.at("traffic");
        reject_unknown(t, "traffic", {"lambda", "q", "matrix_file"});
        maybe(t, "traffic", "lambda", cfg.lambda);
        maybe(t, "traffic", "q", cfg.q);
        maybe(t, "traffic", "matrix_file", cfg.traffic_matrix_file);
    }
    maybe_list(doc, "", "q_values", cfg.q_values);
    maybe(doc, "", "c", cfg.c);
    maybe(doc, "", "C", cfg.C);
    maybe(doc, "", "epsilon", cfg.epsilon);
    maybe(doc, "", "truncation_length", cfg.truncation_length);
    maybe(doc, "", "lambda_tail_tol", cfg.lambda_tail_tol);
    maybe(doc, "", "q_grid", cfg.q_grid);
    maybe_list(doc, "", "frames", cfg.frames);
    maybe(doc, "", "seed", cfg.seed);
    maybe(doc, "", "out", cfg.out);
    maybe(doc, "", "top_k", cfg.top_k);
    maybe(doc, "", "histogram_bin", cfg.histogram_bin);
    maybe(doc, "", "curve_steps", cfg.curve_steps);
    if (doc.contains("sweep")) apply_sweep(cfg.sweep, doc.at("sweep"));
    maybe(doc, "", "threads", cfg.threads);
    maybe(doc, "", "dump_loads", cfg.dump_loads);
    maybe(doc, "", "dump_routing", cfg.dump_routing);
    maybe(doc, "", "plan", cfg.plan_file);
    return cfg;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    return apply_config(std::move(base), doc);
}

bool needs_seed(const RunConfig& cfg, const std::string& command) {
    if (command == "simulate" || command == "sweep") return true;
    // A generated BA graph without its own seed borrows the run seed.
    return cfg.graph.generator == "barabasi_albert" && !cfg.graph.seed;
}

void validate(const RunConfig& cfg, bool seed_required) {
    const auto& g = cfg.graph;
    if (g.generator == "barabasi_albert") {
        require_range(g.m >= 1 && g.m < g.n, "graph: need 1 <= m < n for barabasi_albert");
    } else if (g.generator == "complete") {
        require_range(g.n >= 2, "graph.n: need at least 2 nodes");
    } else if (g.generator == "file") {
        require_range(!g.file.empty(), "graph.file: path required for generator 'file'");
    } else {
        throw ConfigError("graph.generator: expected barabasi_albert, complete or file");
    }
    require_range(cfg.lambda >= 0.0, "traffic.lambda: must be >= 0");
    require_range(cfg.q >= 0.0 && cfg.q <= 1.0, "traffic.q: must lie in [0,1]");
    for (double q : cfg.q_values) {
        require_range(q >= 0.0 && q <= 1.0, "q_values: every entry must lie in [0,1]");
    }
    require_range(cfg.c > 0.0 && cfg.c < 1.0, "c: must lie in (0,1)");
    require_range(cfg.C >= 0.0 && cfg.C <= 1.0, "C: must lie in [0,1]");
    require_range(cfg.epsilon > 0.0 && cfg.epsilon < 1.0, "epsilon: must lie in (0,1)");
    require_range(!cfg.truncation_length || *cfg.truncation_length >= 1,
                  "truncation_length: must be >= 1");
    require_range(cfg.lambda_tail_tol > 0.0 && cfg.lambda_tail_tol < 1.0,
                  "lambda_tail_tol: must lie in (0,1)");
    require_range(cfg.q_grid >= 2, "q_grid: need at least 2 points");
    require_range(!cfg.frames.empty(), "frames: need at least one frame count");
    for (auto f : cfg.frames) require_range(f >= 1, "frames: every entry must be >= 1");
    require_range(cfg.top_k >= 1, "top_k: must be >= 1");
    require_range(cfg.histogram_bin > 0.0 && cfg.histogram_bin <= 1.0,
                  "histogram_bin: must lie in (0,1]");
    require_range(cfg.curve_steps >= 1, "curve_steps: must be >= 1");
    require_range(cfg.sweep.preset == "desk" || cfg.sweep.preset == "paper",
                  "sweep.preset: expected desk or paper");
    require_range(!cfg.sweep.n || *cfg.sweep.n >= 2, "sweep.n: need at least 2 nodes");
    require_range(!cfg.sweep.q_grid || *cfg.sweep.q_grid >= 2, "sweep.q_grid: need >= 2 points");
    require_range(!cfg.sweep.frames || *cfg.sweep.frames >= 1, "sweep.frames: must be >= 1");
    require_range(!cfg.sweep.lambda_tail_tol ||
                      (*cfg.sweep.lambda_tail_tol > 0.0 && *cfg.sweep.lambda_tail_tol < 1.0),
                  "sweep.lambda_tail_tol: must lie in (0,1)");
    require_range(cfg.sweep.sequences >= 1, "sweep.sequences: must be >= 1");
    require_range(!cfg.out.empty(), "out: output directory required");
    if (seed_required && !cfg.seed) {
        throw ConfigError("seed: required for this command (set \"seed\" or pass --seed)");
    }
}

json config_to_json(const RunConfig& cfg) {
    json graph = {{"generator", cfg.graph.generator}};
    if (cfg.graph.generator == "file") {
        graph["file"] = cfg.graph.file;
    } else {
        graph["n"] = cfg.graph.n;
        if (cfg.graph.generator == "barabasi_albert") graph["m"] = cfg.graph.m;
    }
    if (cfg.graph.seed) graph["seed"] = *cfg.graph.seed;
    json traffic = {{"lambda", cfg.lambda}, {"q", cfg.q}};
    if (!cfg.traffic_matrix_file.empty()) traffic["matrix_file"] = cfg.traffic_matrix_file;
    json sweep = {{"preset", cfg.sweep.preset}, {"sequences", cfg.sweep.sequences}};
    if (cfg.sweep.n) sweep["n"] = *cfg.sweep.n;
    if (cfg.sweep.q_grid) sweep["q_grid"] = *cfg.sweep.q_grid;
    if (cfg.sweep.lambda_tail_tol) sweep["lambda_tail_tol"] = *cfg.sweep.lambda_tail_tol;
    if (cfg.sweep.frames) sweep["frames"] = *cfg.sweep.frames;
    json doc = {{"version", kConfigVersion},
                {"graph", graph},
                {"traffic", traffic},
                {"q_values", cfg.effective_q_values()},
                {"c", cfg.c},
                {"C", cfg.C},
                {"epsilon", cfg.epsilon},
                {"lambda_tail_tol", cfg.lambda_tail_tol},
                {"q_grid", cfg.q_grid},
                {"frames", cfg.frames},
                {"top_k", cfg.top_k},
                {"histogram_bin", cfg.histogram_bin},
                {"curve_steps", cfg.curve_steps},
                {"sweep", sweep}};
    // threads and out stay out: they must not change the recorded run.
    doc["truncation_length"] = cfg.truncation_length ? json(*cfg.truncation_length) : json(nullptr);
    doc["seed"] = cfg.seed ? json(*cfg.seed) : json(nullptr);
    if (!cfg.plan_file.empty()) doc["plan"] = cfg.plan_file;
    return doc;
}

}  // namespace linkcap::cli
