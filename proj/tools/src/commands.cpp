#include "linkcap/cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "linkcap/allocation.hpp"
#include "linkcap/error.hpp"
#include "linkcap/graph_io.hpp"
#include "linkcap/metrics.hpp"
#include "linkcap/pmf.hpp"
#include "linkcap/routing.hpp"
#include "linkcap/simulator.hpp"

namespace linkcap::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

class OutDir {
   public:
    explicit OutDir(const RunConfig& cfg, CommandResult& result)
        : root_(cfg.out), result_(result) {
        std::error_code ec;
        fs::create_directories(root_, ec);
        if (ec) throw ConfigError("out: cannot create '" + root_.string() + "': " + ec.message());
    }

    void write(const std::string& name, const std::string& body) {
        std::ofstream f(root_ / name, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError("out: cannot write '" + (root_ / name).string() + "'");
        f << body;
        result_.files.push_back(name);
    }

    void write_json(const std::string& name, const json& doc) { write(name, doc.dump(2) + "\n"); }

   private:
    fs::path root_;
    CommandResult& result_;
};

std::string q_tag(double q) { return "q" + format_number(q); }

std::string csv_row(std::initializer_list<std::string> cells) {
    std::string line;
    for (const auto& c : cells) {
        if (!line.empty()) line += ',';
        line += c;
    }
    return line + "\n";
}

std::string num(double x) { return format_number(x); }
template <typename I>
std::string inum(I x) {
    return fmt::format("{}", x);
}

// Input files are part of the configuration; their problems are config errors.
template <typename F>
auto as_config_error(const std::string& what, F&& f) {
    try {
        return f();
    } catch (const InvalidInput& e) {
        throw ConfigError(what + ": " + e.what());
    } catch (const InvalidParameter& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

json run_metadata(const RunConfig& cfg, const std::string& command) {
    return {{"command", command}, {"config", config_to_json(cfg)}};
}

struct Setup {
    Topology g;
    RoutingTable table;
    std::vector<double> centrality;
    std::vector<EdgeId> ranking;
};

Setup setup(const RunConfig& cfg) {
    Topology g = build_topology(cfg);
    RoutingTable table = as_config_error("graph", [&] { return RoutingTable(g); });
    std::vector<double> centrality = edge_betweenness(g);
    std::vector<EdgeId> ranking = rank_by_centrality(centrality);
    return {std::move(g), std::move(table), std::move(centrality), std::move(ranking)};
}

CapacityPlan plan_for(const Setup& s, const TrafficConfig& traffic, const RunConfig& cfg,
                      double q, std::vector<Pmf>* keep = nullptr) {
    std::vector<Pmf> pmfs = all_edge_load_pmfs(s.table, traffic, cfg.truncation(), cfg.threads);
    CapacityPlan plan = allocate(pmfs, cfg.c);
    plan.provenance["lambda"] = cfg.lambda;
    plan.provenance["q"] = q;
    plan.provenance["epsilon"] = cfg.epsilon;
    plan.provenance["truncation_length"] =
        cfg.truncation_length ? json(*cfg.truncation_length) : json("policy");
    if (!cfg.traffic_matrix_file.empty()) plan.provenance["traffic_matrix"] = cfg.traffic_matrix_file;
    if (keep) *keep = std::move(pmfs);
    return plan;
}

}  // namespace

std::string format_number(double x) { return fmt::format("{}", x); }

Topology build_topology(const RunConfig& cfg) {
    const auto& src = cfg.graph;
    return as_config_error("graph", [&] {
        if (src.generator == "file") return read_graph_file(src.file).topology;
        if (src.generator == "complete") return complete_graph(src.n);
        std::uint64_t seed = src.seed ? *src.seed : cfg.seed.value_or(0);
        return generate_barabasi_albert(src.n, src.m, seed);
    });
}

TrafficConfig build_traffic(const RunConfig& cfg, std::size_t node_count, double q) {
    TrafficConfig t = TrafficConfig::homogeneous(node_count, cfg.lambda, q);
    if (cfg.traffic_matrix_file.empty()) return t;
    const std::string& path = cfg.traffic_matrix_file;
    std::ifstream in(path);
    if (!in) throw ConfigError("traffic.matrix_file: cannot open '" + path + "'");
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long m = 0, n = 0;
        double lambda = 0.0, qq = 0.0;
        if (!(ls >> m)) continue;  // blank
        std::string rest;
        if (!(ls >> n >> lambda >> qq) || (ls >> rest)) {
            throw ConfigError(fmt::format("{}:{}: expected 'm n lambda q'", path, lineno));
        }
        if (m < 0 || n < 0 || m >= static_cast<long long>(node_count) ||
            n >= static_cast<long long>(node_count) || m == n) {
            throw ConfigError(fmt::format("{}:{}: bad node pair {} {}", path, lineno, m, n));
        }
        as_config_error(fmt::format("{}:{}", path, lineno), [&] {
            t.set(static_cast<NodeId>(m), static_cast<NodeId>(n), lambda, qq);
            return 0;
        });
    }
    return t;
}

CommandResult run_pmf(const RunConfig& cfg) {
    CommandResult result;
    Setup s = setup(cfg);
    std::size_t k = cfg.top_k;
    if (k > s.g.edge_count()) {
        result.warnings.push_back(fmt::format("top_k {} exceeds the {} edges; using {}", k,
                                              s.g.edge_count(), s.g.edge_count()));
        k = s.g.edge_count();
    }
    OutDir out(cfg, result);
    std::string norm = csv_row({"q", "rank", "u", "v", "centrality", "pairs", "length",
                                "mass_sum", "truncation_deficit", "mean", "std"});
    for (double q : cfg.effective_q_values()) {
        TrafficConfig traffic = build_traffic(cfg, s.g.node_count(), q);
        json edges = json::array();
        for (std::size_t r = 0; r < k; ++r) {
            EdgeId e = s.ranking[r];
            const Edge& ed = s.g.edge(e);
            Pmf p = edge_load_pmf(e, s.table, traffic, cfg.truncation());
            PmfMoments mo = pmf_stats(p);
            std::string body = "k,mass\n";
            for (std::size_t i = 0; i < p.size(); ++i) body += inum(i) + "," + num(p.mass[i]) + "\n";
            out.write(fmt::format("pmf_{}_rank{}.csv", q_tag(q), r + 1), body);
            norm += csv_row({num(q), inum(r + 1), inum(ed.u), inum(ed.v), num(s.centrality[e]),
                             inum(s.table.contributions(e).size()), inum(p.size()),
                             num(p.total()), num(p.truncation_deficit), num(mo.mean),
                             num(mo.std)});
            edges.push_back({{"rank", r + 1},
                             {"u", ed.u},
                             {"v", ed.v},
                             {"centrality", s.centrality[e]},
                             {"mean", mo.mean},
                             {"std", mo.std},
                             {"pmf", pmf_to_json(p)}});
        }
        out.write_json(fmt::format("pmf_{}.json", q_tag(q)),
                       {{"q", q}, {"lambda", cfg.lambda}, {"edges", edges}});
    }
    out.write("normalization.csv", norm);
    out.write_json("pmf_meta.json", run_metadata(cfg, "pmf"));
    return result;
}

CommandResult run_allocate(const RunConfig& cfg) {
    CommandResult result;
    Setup s = setup(cfg);
    OutDir out(cfg, result);
    for (double q : cfg.effective_q_values()) {
        TrafficConfig traffic = build_traffic(cfg, s.g.node_count(), q);
        std::vector<Pmf> pmfs;
        CapacityPlan plan = plan_for(s, traffic, cfg, q, &pmfs);
        std::vector<PlanRow> rows = plan_report(plan, pmfs, s.centrality);
        std::sort(rows.begin(), rows.end(), [](const PlanRow& a, const PlanRow& b) {
            return a.centrality_rank < b.centrality_rank;
        });
        std::string body = csv_row({"rank", "u", "v", "centrality", "capacity", "mean", "std",
                                    "exceedance"});
        for (const PlanRow& row : rows) {
            const Edge& ed = s.g.edge(row.edge);
            body += csv_row({inum(row.centrality_rank), inum(ed.u), inum(ed.v),
                             num(s.centrality[row.edge]), inum(row.capacity), num(row.mean),
                             num(row.std), num(row.exceedance)});
        }
        out.write(fmt::format("plan_{}.csv", q_tag(q)), body);
        out.write_json(fmt::format("plan_{}.json", q_tag(q)), plan_to_json(s.g, plan));
    }
    out.write_json("allocate_meta.json", run_metadata(cfg, "allocate"));
    return result;
}

CommandResult run_simulate(const RunConfig& cfg) {
    CommandResult result;
    Setup s = setup(cfg);
    std::optional<CapacityPlan> fixed;
    if (!cfg.plan_file.empty()) {
        std::ifstream in(cfg.plan_file);
        if (!in) throw ConfigError("plan: cannot open '" + cfg.plan_file + "'");
        fixed = as_config_error("plan '" + cfg.plan_file + "'", [&] {
            json doc;
            try {
                doc = json::parse(in);
            } catch (const json::exception& e) {
                throw InvalidInput(e.what());
            }
            return plan_from_json(doc, s.g);
        });
    }
    OutDir out(cfg, result);
    const std::uint64_t seed = *cfg.seed;
    for (double q : cfg.effective_q_values()) {
        TrafficConfig traffic = build_traffic(cfg, s.g.node_count(), q);
        CapacityPlan plan = fixed ? *fixed : plan_for(s, traffic, cfg, q);
        for (std::size_t frames : cfg.frames) {
            FrameTrace trace =
                run_simulation(s.g, s.table, traffic, plan, {frames, seed, cfg.threads});
            const std::string tag = fmt::format("{}_f{}", q_tag(q), frames);
            std::vector<double> frac = trace.congestion_free_fraction();

            std::string body = csv_row({"u", "v", "capacity", "congestion_free_fraction"});
            for (EdgeId e = 0; e < s.g.edge_count(); ++e) {
                const Edge& ed = s.g.edge(e);
                body += csv_row({inum(ed.u), inum(ed.v), inum(plan.capacity[e]), num(frac[e])});
            }
            out.write("trace_" + tag + ".csv", body);

            Histogram h = congestion_free_histogram(frac, cfg.histogram_bin);
            body = csv_row({"bin_lower", "bin_upper", "mass"});
            for (std::size_t b = 0; b < h.mass.size(); ++b) {
                // bin edges are multiples of the width; print them without float noise
                body += csv_row({fmt::format("{:.12g}", h.bin_lower(b)),
                                 fmt::format("{:.12g}", std::min(1.0, h.bin_lower(b + 1))),
                                 num(h.mass[b])});
            }
            out.write("histogram_" + tag + ".csv", body);

            body = csv_row({"C", "g"});
            for (const CurvePoint& pt : global_measure_curve(trace, cfg.curve_steps)) {
                body += csv_row({num(pt.C), num(pt.g)});
            }
            out.write("g_curve_" + tag + ".csv", body);

            if (cfg.dump_loads) {
                body = "frame";
                for (const Edge& ed : s.g.edges()) body += "," + edge_label(ed);
                body += "\n";
                for (std::size_t t = 0; t < trace.frame_count(); ++t) {
                    body += inum(t);
                    for (Load l : trace.frame(t)) body += "," + inum(l);
                    body += "\n";
                }
                out.write("loads_" + tag + ".csv", body);
            }
        }
    }
    json meta = run_metadata(cfg, "simulate");
    meta["rng_algorithm"] = std::string(kRngAlgorithm);
    meta["g_at_C"] = cfg.C;
    out.write_json("simulate_meta.json", meta);
    return result;
}

CommandResult run_sweep(const RunConfig& cfg) {
    CommandResult result;
    SweepConfig sc = cfg.sweep.preset == "paper" ? SweepConfig::paper_scale()
                                                 : SweepConfig::desk_scale();
    if (cfg.sweep.n) sc.n = *cfg.sweep.n;
    if (cfg.sweep.q_grid) sc.grid.q_points = *cfg.sweep.q_grid;
    if (cfg.sweep.lambda_tail_tol) sc.grid.lambda_tail_tol = *cfg.sweep.lambda_tail_tol;
    if (cfg.sweep.frames) sc.pipeline.n_frames = *cfg.sweep.frames;
    sc.sequences = cfg.sweep.sequences;
    sc.pipeline.c = cfg.c;
    sc.pipeline.C = cfg.C;
    sc.pipeline.truncation = cfg.truncation();
    sc.lambda_mean = cfg.lambda;
    sc.seed = *cfg.seed;
    sc.threads = cfg.threads;

    std::vector<SweepRecord> records = topology_sweep(sc);
    OutDir out(cfg, result);
    std::string body = csv_row({"sequence", "step", "edge_count", "mean_degree", "degree_std",
                                "mean_edge_centrality", "edge_centrality_std",
                                "expected_global_measure"});
    json best = json::array();
    for (std::size_t seq = 0; seq < sc.sequences; ++seq) {
        const SweepRecord* top = nullptr;
        for (const SweepRecord& r : records) {
            if (r.sequence != seq) continue;
            body += csv_row({inum(r.sequence), inum(r.step), inum(r.stats.edge_count),
                             num(r.stats.mean_degree), num(r.stats.degree_std),
                             num(r.stats.mean_edge_centrality), num(r.stats.edge_centrality_std),
                             num(r.expected_measure)});
            if (!top || r.expected_measure > top->expected_measure) top = &r;
        }
        if (top) {
            best.push_back({{"sequence", seq},
                            {"step", top->step},
                            {"edge_count", top->stats.edge_count},
                            {"mean_degree", top->stats.mean_degree},
                            {"expected_global_measure", top->expected_measure}});
        }
    }
    out.write("sweep.csv", body);

    // Spread of the most central edge's load on the sweep's starting graph.
    Topology start = complete_graph(sc.n);
    RoutingTable table(start);
    std::vector<double> centrality = edge_betweenness(start);
    EdgeId top_edge = rank_by_centrality(centrality).front();
    body = csv_row({"q", "u", "v", "mean", "std", "cv"});
    for (double q : q_grid(sc.grid.q_points)) {
        TrafficConfig traffic = TrafficConfig::homogeneous(sc.n, sc.lambda_mean, q);
        PmfMoments mo = pmf_stats(edge_load_pmf(top_edge, table, traffic, sc.pipeline.truncation));
        const Edge& ed = start.edge(top_edge);
        body += csv_row({num(q), inum(ed.u), inum(ed.v), num(mo.mean), num(mo.std),
                         num(mo.mean > 0.0 ? mo.std / mo.mean : 0.0)});
    }
    out.write("pmf_std_vs_q.csv", body);

    json meta = run_metadata(cfg, "sweep");
    meta["resolved"] = {{"n", sc.n},
                        {"q_grid", sc.grid.q_points},
                        {"lambda_tail_tol", sc.grid.lambda_tail_tol},
                        {"frames", sc.pipeline.n_frames},
                        {"sequences", sc.sequences}};
    meta["best"] = best;
    meta["rng_algorithm"] = std::string(kRngAlgorithm);
    out.write_json("sweep_summary.json", meta);
    return result;
}

CommandResult run_stats(const RunConfig& cfg) {
    CommandResult result;
    Topology g = build_topology(cfg);
    OutDir out(cfg, result);
    GraphStats st = graph_stats(g);
    json doc = {{"node_count", g.node_count()},
                {"edge_count", st.edge_count},
                {"connected", is_connected(g)},
                {"components", component_count(g)},
                {"mean_degree", st.mean_degree},
                {"degree_std", st.degree_std}};
    std::ostringstream graph_text;
    write_graph(graph_text, g, {{"source", config_to_json(cfg)["graph"]}});
    out.write("graph.txt", graph_text.str());

    if (is_connected(g) && g.node_count() >= 2) {
        std::vector<double> centrality = edge_betweenness(g);
        std::vector<EdgeId> ranking = rank_by_centrality(centrality);
        std::vector<std::size_t> rank(ranking.size());
        for (std::size_t r = 0; r < ranking.size(); ++r) rank[ranking[r]] = r + 1;
        std::string body = csv_row({"u", "v", "betweenness", "rank"});
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            body += csv_row({inum(ed.u), inum(ed.v), num(centrality[e]), inum(rank[e])});
        }
        out.write("betweenness.csv", body);
        doc["mean_edge_centrality"] = st.mean_edge_centrality;
        doc["edge_centrality_std"] = st.edge_centrality_std;
        doc["betweenness_convention"] =
            "ordered pairs (m,n), m != n; each pair adds the fraction of its shortest paths "
            "that use the edge";
        if (cfg.dump_routing) out.write_json("routing.json", routing_to_json(g, RoutingTable(g)));
    } else {
        result.warnings.push_back("graph is disconnected; betweenness not computed");
    }
    out.write_json("stats.json", doc);
    return result;
}

CommandResult run_command(const std::string& name, const RunConfig& cfg) {
    if (name == "pmf") return run_pmf(cfg);
    if (name == "allocate") return run_allocate(cfg);
    if (name == "simulate") return run_simulate(cfg);
    if (name == "sweep") return run_sweep(cfg);
    if (name == "stats") return run_stats(cfg);
    throw ConfigError("unknown command '" + name + "'");
}

}  // namespace linkcap::cli
