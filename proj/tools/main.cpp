// Command-line front end: skewflow <command> --config PATH [options]

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skewflow/chain.hpp"
#include "skewflow/commands.hpp"
#include "skewflow/config.hpp"
#include "skewflow/error.hpp"

namespace {

enum ExitCode { ok = 0, validation = 2, numeric = 3, resource = 4 };

struct Overrides {
    std::string config;
    std::optional<std::string> out;
    std::optional<double> tol;
    std::optional<std::size_t> threads;
    std::optional<std::uint64_t> seed;
    // simulate
    std::optional<std::vector<double>> x0;
    std::optional<std::string> signal;
    std::optional<double> t_end, dt;
    // metric
    std::optional<std::string> a, b;
    std::optional<std::vector<double>> xa, xb;
    bool isometry = false;
    // chain-sets
    std::optional<double> epsilon;
    std::optional<std::size_t> m, q;
    std::optional<std::string> mode;
    // stitch-demo
    std::optional<long long> n;
    std::optional<std::size_t> length;
};

void apply(const Overrides& o, skewflow::ExperimentConfig& cfg) {
    auto& run = cfg.run;
    auto& r = cfg.resolved["run"];
    if (o.out) run.out = *o.out;
    if (o.tol) {
        if (!(*o.tol > 0.0)) throw skewflow::ValidationError("--tol must be positive");
        run.tolerance = *o.tol;
        r["tolerance"] = *o.tol;
    }
    if (o.seed) r["seed"] = run.seed = *o.seed;
    if (o.x0) r["x0"] = *(run.x0 = *o.x0);
    if (o.signal) r["signal"] = *(run.signal = *o.signal);
    if (o.t_end) r["t_end"] = run.t_end = *o.t_end;
    if (o.dt) {
        if (!(*o.dt > 0.0)) throw skewflow::ValidationError("--dt must be positive");
        r["sample_dt"] = run.sample_dt = *o.dt;
    }
    if (o.a) r["a"] = *(run.a = *o.a);
    if (o.b) r["b"] = *(run.b = *o.b);
    if (o.xa) r["xa"] = *(run.xa = *o.xa);
    if (o.xb) r["xb"] = *(run.xb = *o.xb);
    if (o.n) r["N"] = run.stitch_n = *o.n;
    if (o.length) r["chain_length"] = run.chain_length = *o.length;

    auto& p = cfg.chain;
    if (o.threads) p.threads = *o.threads;
    if (!o.epsilon && !o.m && !o.q && !o.mode) return;
    if (!cfg.resolved.contains("analysis")) throw skewflow::ValidationError("chain options need an analysis block");
    auto& a = cfg.resolved["analysis"];
    if (o.epsilon) {
        if (!(*o.epsilon > 0.0)) throw skewflow::ValidationError("--epsilon must be positive");
        a["epsilon"] = p.epsilon = *o.epsilon;
    }
    if (o.m) {
        if (*o.m == 0) throw skewflow::ValidationError("--m must be at least 1");
        a["m"] = p.m = *o.m;
    }
    if (o.q) {
        if (*o.q == 0) throw skewflow::ValidationError("--q must be at least 1");
        a["q"] = p.offset_samples = *o.q;
    }
    if (o.mode) {
        p.mode = skewflow::parse_chain_mode(*o.mode);
        a["mode"] = skewflow::to_string(p.mode);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Switched-system chain analysis over graph-constrained switching signals"};
    app.require_subcommand(1);
    Overrides o;

    auto common = [&](CLI::App* cmd) {
        cmd->add_option("--config", o.config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
        cmd->add_option("--out", o.out, "output directory (default: stdout)");
        cmd->add_option("--tol", o.tol, "metric tolerance");
        cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
        cmd->add_option("--seed", o.seed, "random seed");
    };

    auto* analyze = app.add_subcommand("analyze-graph", "SCCs, condensation, Morse order, chaos certificates");
    common(analyze);

    auto* simulate = app.add_subcommand("simulate", "trajectory of the switched system as CSV");
    common(simulate);
    simulate->add_option("--x0", o.x0, "initial state");
    simulate->add_option("--signal", o.signal, "switching signal literal");
    simulate->add_option("--t-end", o.t_end, "final time");
    simulate->add_option("--dt", o.dt, "sampling interval");

    auto* metric = app.add_subcommand("metric", "distance between two sequences, signals, or hybrid states");
    common(metric);
    metric->add_option("--a", o.a, "first literal");
    metric->add_option("--b", o.b, "second literal");
    metric->add_option("--xa", o.xa, "state paired with a (product metric)");
    metric->add_option("--xb", o.xb, "state paired with b (product metric)");
    metric->add_flag("--isometry", o.isometry, "compare d_Omega with the embedded signal distance");

    auto* chain = app.add_subcommand("chain-sets", "chain components on a grid");
    common(chain);
    chain->add_option("--epsilon", o.epsilon, "chain jump size");
    chain->add_option("--m", o.m, "flow time per link in steps h");
    chain->add_option("--q", o.q, "offset samples per step");
    chain->add_option("--mode", o.mode, "free-switching or graph-constrained");

    auto* stitch = app.add_subcommand("stitch-demo", "stitch a random chain into one timeline and report gaps");
    common(stitch);
    stitch->add_option("--N", o.n, "agreement radius in cells");
    stitch->add_option("--length", o.length, "number of chain links");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return validation;
    }

    try {
        auto cfg = skewflow::load_config(o.config);
        apply(o, cfg);
        if (*analyze) skewflow::cmd_analyze_graph(cfg, std::cout);
        if (*simulate) skewflow::cmd_simulate(cfg, std::cout);
        if (*metric) skewflow::cmd_metric(cfg, o.isometry, std::cout);
        if (*chain) skewflow::cmd_chain_sets(cfg, std::cout);
        if (*stitch) skewflow::cmd_stitch_demo(cfg, std::cout);
    } catch (const skewflow::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return validation;
    } catch (const skewflow::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return numeric;
    } catch (const skewflow::ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return resource;
    }
    return ok;
}
