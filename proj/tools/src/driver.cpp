#include "linkcap/cli/driver.hpp"

#include <algorithm>
#include <optional>

#include <CLI11.hpp>

#include "linkcap/cli/commands.hpp"
#include "linkcap/cli/config.hpp"
#include "linkcap/error.hpp"

namespace linkcap::cli {
namespace {

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<double> lambda;
    std::vector<double> q;
    std::optional<double> c;
    std::optional<double> C;
    std::vector<std::size_t> frames;
    std::optional<double> epsilon;
    std::optional<std::size_t> truncation_length;
    std::optional<std::size_t> top_k;
    std::optional<unsigned> threads;
    std::optional<std::string> plan;
    std::optional<std::string> preset;
    std::optional<std::size_t> sequences;
    std::optional<std::string> graph;
    bool dump_loads = false;
    bool dump_routing = false;
};

void add_flags(CLI::App& sub, Flags& f, const std::string& name) {
    sub.add_option("--config", f.config, "versioned JSON config")->check(CLI::ExistingFile);
    sub.add_option("--seed", f.seed, "base RNG seed");
    sub.add_option("--out", f.out, "output directory");
    sub.add_option("--graph", f.graph, "edge-list graph file (replaces the configured graph)");
    sub.add_option("--lambda", f.lambda, "mean packets per active pair");
    sub.add_option("--q", f.q, "activation probability; several values run in turn");
    sub.add_option("--c", f.c, "per-edge capacity criterion");
    sub.add_option("--C", f.C, "congestion-free frame share for g");
    sub.add_option("--frames", f.frames, "frame counts");
    sub.add_option("--epsilon", f.epsilon, "truncation tolerance");
    sub.add_option("--truncation-length", f.truncation_length, "fixed per-pair pmf length");
    sub.add_option("--threads", f.threads, "worker threads (0 = all cores)");
    if (name == "pmf") sub.add_option("--top-k", f.top_k, "number of most central edges");
    if (name == "simulate") {
        sub.add_option("--plan", f.plan, "capacity plan JSON from allocate");
        sub.add_flag("--dump-loads", f.dump_loads, "write per-frame edge loads");
    }
    if (name == "sweep") {
        sub.add_option("--preset", f.preset, "desk or paper");
        sub.add_option("--sequences", f.sequences, "independent removal orders");
    }
    if (name == "stats") sub.add_flag("--dump-routing", f.dump_routing, "write routing.json");
}

RunConfig resolve(const Flags& f, const std::string& command) {
    RunConfig cfg;
    if (!f.config.empty()) cfg = load_config_file(f.config, cfg);
    if (f.seed) cfg.seed = f.seed;
    if (f.out) cfg.out = *f.out;
    if (f.graph) {
        cfg.graph.generator = "file";
        cfg.graph.file = *f.graph;
    }
    if (f.lambda) cfg.lambda = *f.lambda;
    if (!f.q.empty()) {
        cfg.q = f.q.front();
        cfg.q_values = f.q;
    }
    if (f.c) cfg.c = *f.c;
    if (f.C) cfg.C = *f.C;
    if (!f.frames.empty()) {
        cfg.frames = f.frames;
        if (command == "sweep") cfg.sweep.frames = f.frames.front();
    }
    if (f.epsilon) cfg.epsilon = *f.epsilon;
    if (f.truncation_length) cfg.truncation_length = f.truncation_length;
    if (f.top_k) cfg.top_k = *f.top_k;
    if (f.threads) cfg.threads = *f.threads;
    if (f.plan) cfg.plan_file = *f.plan;
    if (f.preset) cfg.sweep.preset = *f.preset;
    if (f.sequences) cfg.sweep.sequences = *f.sequences;
    cfg.dump_loads = cfg.dump_loads || f.dump_loads;
    cfg.dump_routing = cfg.dump_routing || f.dump_routing;
    validate(cfg, needs_seed(cfg, command));
    return cfg;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"linkcap: link-capacity planning from traffic load distributions", "linkcap"};
    app.require_subcommand(1);
    Flags flags;
    std::string command;
    const std::vector<std::pair<std::string, std::string>> subs{
        {"pmf", "load pmfs of the most central edges"},
        {"allocate", "per-edge capacity plan at criterion c"},
        {"simulate", "frame simulation against a capacity plan"},
        {"sweep", "expected global measure along edge removals"},
        {"stats", "graph statistics and edge betweenness"},
    };
    for (const auto& [name, about] : subs) {
        CLI::App* sub = app.add_subcommand(name, about);
        add_flags(*sub, flags, name);
        sub->callback([&command, name = name] { command = name; });
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto chosen = app.get_subcommands();
        out << (chosen.empty() ? app.help() : chosen.front()->help());
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "linkcap: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        RunConfig cfg = resolve(flags, command);
        CommandResult result = run_command(command, cfg);
        for (const std::string& w : result.warnings) err << "warning: " << w << "\n";
        for (const std::string& file : result.files) out << cfg.out << "/" << file << "\n";
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "linkcap: config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const TruncationInsufficient& e) {
        err << "linkcap: " << e.what()
            << "\nhint: lower --epsilon or raise --truncation-length so each edge pmf keeps at "
               "least c of its mass\n";
        return kExitNumeric;
    } catch (const Error& e) {
        err << "linkcap: numeric error: " << e.what() << "\n";
        return kExitNumeric;
    }
}

}  // namespace linkcap::cli
