#include "skewflow/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>

#include "skewflow/error.hpp"
#include "skewflow/literal.hpp"
#include "skewflow/random.hpp"
#include "skewflow/sequence.hpp"
#include "skewflow/signal.hpp"

namespace skewflow {

using nlohmann::json;

namespace {

const SwitchedSystem& require_system(const ExperimentConfig& cfg) {
    if (!cfg.system) throw ValidationError("this command needs a system block");
    return *cfg.system;
}

// Opens out_dir/name, or hands back the console when no directory is set.
class Sink {
public:
    Sink(const ExperimentConfig& cfg, const std::string& name, std::ostream& console) : stream_(&console) {
        if (cfg.run.out.empty()) return;
        const std::filesystem::path dir(cfg.run.out);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw ValidationError("cannot create output directory " + dir.string());
        path_ = dir / name;
        file_.open(path_);
        if (!file_) throw ValidationError("cannot write " + path_.string());
        stream_ = &file_;
    }
    std::ostream& stream() { return *stream_; }
    bool to_file() const { return !path_.empty(); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::ofstream file_;
    std::filesystem::path path_;
    std::ostream* stream_;
};

void write_json(const ExperimentConfig& cfg, const std::string& name, const json& doc, std::ostream& console) {
    Sink sink(cfg, name, console);
    sink.stream() << doc.dump(2) << '\n';
    if (sink.to_file()) console << "wrote " << sink.path().string() << '\n';
}

std::string certificate_kind(ChaosCertificate::Kind kind) {
    switch (kind) {
    case ChaosCertificate::Kind::periodic_orbit: return "periodic_orbit";
    case ChaosCertificate::Kind::chaotic: return "chaotic";
    case ChaosCertificate::Kind::trivial: return "trivial";
    }
    return "unknown";
}

std::vector<std::string> label_list(const DirectedGraph& g, const Word& w) {
    std::vector<std::string> out;
    for (Vertex v : w) out.push_back(g.label(v));
    return out;
}

SwitchingSignal random_signal(Rng& rng, const DirectedGraph& g, double h) {
    return sigma_embed(random_sequence(rng, g), h);
}

} // namespace

json analyze_graph_report(const DirectedGraph& g) {
    json report;
    report["vertices"] = g.labels();
    json edges = json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back({g.label(u), g.label(v)});
    report["edges"] = edges;

    const auto validation = validate_n_graph(g);
    report["validation"] = {{"ok", validation.ok()},
                            {"missing_successor", label_list(g, validation.missing_successor)},
                            {"missing_predecessor", label_list(g, validation.missing_predecessor)}};
    if (!validation.ok()) return report;

    const auto dec = scc(g);
    json comps = json::array();
    for (std::size_t c = 0; c < dec.size(); ++c) {
        const auto cert = chaos_certificate(g, dec.components[c]);
        json jc = {{"id", c},
                   {"vertices", label_list(g, dec.components[c])},
                   {"cyclic", static_cast<bool>(dec.cyclic[c])},
                   {"certificate", {{"kind", certificate_kind(cert.kind)}}}};
        if (cert.kind == ChaosCertificate::Kind::periodic_orbit)
            jc["certificate"]["orbit"] = g.format_word(cert.orbit);
        if (cert.kind == ChaosCertificate::Kind::chaotic) jc["certificate"]["witness"] = g.label(cert.witness);
        comps.push_back(jc);
    }
    report["sccs"] = comps;
    json cond = json::array();
    for (const auto& [a, b] : dec.condensation_edges) cond.push_back({a, b});
    report["condensation"] = cond;
    json order = json::array();
    for (const auto& [a, b] : morse_order(dec).strict_pairs()) order.push_back({a, b});
    report["morse_order"] = order;
    return report;
}

void cmd_analyze_graph(const ExperimentConfig& cfg, std::ostream& console) {
    json report = analyze_graph_report(cfg.graph);
    report["config"] = cfg.resolved;
    write_json(cfg, "graph_report.json", report, console);
    if (!report["validation"]["ok"].get<bool>())
        throw ValidationError(validate_n_graph(cfg.graph).describe(cfg.graph));
}

void cmd_simulate(const ExperimentConfig& cfg, std::ostream& console) {
    const auto& sys = require_system(cfg);
    const auto& run = cfg.run;
    if (!run.x0) throw ValidationError("simulate needs an initial state x0");
    if (run.x0->size() != sys.dimension()) throw ValidationError("x0 has the wrong dimension");
    if (!sys.contains(*run.x0)) throw ValidationError("x0 lies outside the state box");
    if (!run.signal) throw ValidationError("simulate needs a signal literal");
    const auto f = parse_signal_literal(*run.signal, cfg.graph, sys.step());
    if (!is_admissible(cfg.graph, f)) throw ValidationError("signal is not admissible for the graph");

    Sink sink(cfg, "trajectory.csv", console);
    auto& out = sink.stream();
    out << "# config: " << cfg.resolved.dump() << '\n';
    out << 't';
    for (std::size_t i = 0; i < sys.dimension(); ++i) out << ",x" << (i + 1);
    out << ",active_vertex\n";

    const double direction = run.t_end < 0.0 ? -1.0 : 1.0;
    const auto samples = static_cast<std::size_t>(std::floor(std::abs(run.t_end) / run.sample_dt + 1e-9));
    std::vector<double> times;
    for (std::size_t k = 0; k <= samples; ++k) times.push_back(direction * run.sample_dt * static_cast<double>(k));
    if (std::abs(times.back() - run.t_end) > 1e-12 * std::max(1.0, std::abs(run.t_end))) times.push_back(run.t_end);

    auto row = [&](double t, const State& x) {
        char stamp[32];
        std::snprintf(stamp, sizeof stamp, "%.12g", t);
        out << stamp;
        for (double v : x) out << ',' << format_real(v);
        out << ',' << cfg.graph.label(f.value_at(t)) << '\n';
    };
    State x = *run.x0;
    row(times.front(), x);
    try {
        for (std::size_t k = 1; k < times.size(); ++k) {
            x = switched_flow(sys, times[k] - times[k - 1], x, shift(f, times[k - 1]));
            row(times[k], x);
        }
    } catch (const NumericError& e) {
        out << "# error: partial output, " << e.what() << '\n';
        throw;
    }
    if (sink.to_file()) console << "wrote " << sink.path().string() << '\n';
}

void cmd_metric(const ExperimentConfig& cfg, bool isometry, std::ostream& console) {
    const auto& run = cfg.run;
    if (!run.a || !run.b) throw ValidationError("metric needs two object literals a and b");
    const double tol = run.tolerance;
    json result = {{"tolerance", tol}};
    const bool signals = is_signal_literal(*run.a) || is_signal_literal(*run.b);
    const std::optional<double> h = cfg.system ? std::optional<double>(cfg.system->step()) : std::nullopt;

    if (isometry) {
        if (signals) throw ValidationError("the isometry check takes two sequence literals");
        const auto x = parse_sequence_literal(*run.a, cfg.graph);
        const auto y = parse_sequence_literal(*run.b, cfg.graph);
        const double step = h.value_or(1.0);
        const double d_omega = metric_omega(x, y, tol);
        const double d_delta = metric_delta(sigma_embed(x, step), sigma_embed(y, step), tol);
        result["kind"] = "isometry";
        result["omega"] = d_omega;
        result["delta"] = d_delta;
        result["difference"] = std::abs(d_omega - d_delta);
        result["within_2tol"] = std::abs(d_omega - d_delta) <= 2.0 * tol;
    } else if (run.xa || run.xb) {
        if (!run.xa || !run.xb) throw ValidationError("the product metric needs both xa and xb");
        const auto f = parse_signal_literal(*run.a, cfg.graph, h);
        const auto g = parse_signal_literal(*run.b, cfg.graph, h);
        result["kind"] = "product";
        result["value"] = product_metric({*run.xa, f}, {*run.xb, g}, tol);
    } else if (signals) {
        const auto f = parse_signal_literal(*run.a, cfg.graph, h);
        const auto g = parse_signal_literal(*run.b, cfg.graph, h);
        result["kind"] = "delta";
        result["value"] = metric_delta(f, g, tol);
    } else {
        const auto x = parse_sequence_literal(*run.a, cfg.graph);
        const auto y = parse_sequence_literal(*run.b, cfg.graph);
        result["kind"] = "omega";
        result["value"] = metric_omega(x, y, tol);
    }
    result["config"] = cfg.resolved;
    write_json(cfg, "metric.json", result, console);
}

void cmd_chain_sets(const ExperimentConfig& cfg, std::ostream& console) {
    const auto& sys = require_system(cfg);
    if (!cfg.grid) throw ValidationError("chain-sets needs analysis.grid");
    const Grid grid = build_grid(sys.box(), *cfg.grid);
    const ChainGraph cg = build_chain_graph(sys, cfg.graph, grid, cfg.chain);
    const auto comps = chain_components(cg);

    {
        Sink sink(cfg, "components.csv", console);
        auto& out = sink.stream();
        out << "# config: " << cfg.resolved.dump() << '\n';
        out << "component_id,cell_index";
        for (std::size_t i = 0; i < grid.dimension(); ++i) out << ",center" << (i + 1);
        out << '\n';
        for (std::size_t c = 0; c < comps.size(); ++c)
            for (std::size_t cell : comps[c].cells) {
                out << c << ',' << cell;
                for (double v : grid.center(cell)) out << ',' << format_real(v);
                out << '\n';
            }
        if (sink.to_file()) console << "wrote " << sink.path().string() << '\n';
    }

    json jcomps = json::array();
    std::vector<json> best(cfg.references.size());
    for (std::size_t c = 0; c < comps.size(); ++c) {
        const auto& comp = comps[c];
        json runs = json::array();
        for (const auto& [a, b] : cell_runs(comp.cells)) runs.push_back({a, b});
        json jc = {{"id", c}, {"nodes", comp.nodes.size()}, {"cells", comp.cells.size()}, {"viable", comp.viable},
                   {"cell_runs", runs}};
        json lo = grid.center(comp.cells.front()), hi = grid.center(comp.cells.back());
        if (grid.dimension() == 1) jc["center_range"] = {lo[0], hi[0]};
        if (!cfg.references.empty()) {
            std::vector<double> points;
            for (std::size_t cell : comp.cells) points.push_back(grid.center(cell)[0]);
            json dist;
            for (std::size_t r = 0; r < cfg.references.size(); ++r) {
                const double d = hausdorff_distance(points, cfg.references[r].interval);
                dist[cfg.references[r].name] = d;
                if (best[r].is_null() || d < best[r]["hausdorff"].get<double>())
                    best[r] = {{"reference", cfg.references[r].name}, {"component", c}, {"hausdorff", d}};
            }
            jc["hausdorff"] = dist;
        }
        jcomps.push_back(jc);
    }

    json summary = {{"mode", to_string(cfg.chain.mode)},
                    {"epsilon", cfg.chain.epsilon},
                    {"m", cfg.chain.m},
                    {"T", static_cast<double>(cfg.chain.m) * sys.step()},
                    {"q", cfg.chain.offset_samples},
                    {"cell_count", grid.cell_count()},
                    {"cell_radius", grid.radius()},
                    {"node_count", cg.node_count()},
                    {"edge_count", cg.edges.targets.size()},
                    {"timed_words", cg.word_count},
                    {"component_count", comps.size()},
                    {"components", jcomps},
                    {"closest_components", best},
                    {"config", cfg.resolved}};
    write_json(cfg, "summary.json", summary, console);
}

void cmd_stitch_demo(const ExperimentConfig& cfg, std::ostream& console) {
    const auto& g = cfg.graph;
    if (!g.is_complete()) throw ValidationError("stitch-demo needs a complete graph");
    const double h = cfg.system ? cfg.system->step() : 1.0;
    const Index n = cfg.run.stitch_n;
    if (n < 1) throw ValidationError("stitch-demo needs N >= 1");
    const double tol = cfg.run.tolerance;

    Rng rng(cfg.run.seed);
    std::uniform_int_distribution<int> cells(1, 4);
    std::vector<ChainLink> chain;
    for (std::size_t j = 0; j < cfg.run.chain_length; ++j)
        chain.push_back({random_signal(rng, g, h), h * cells(rng)});
    const auto head = random_signal(rng, g, h);
    const auto tail = random_signal(rng, g, h);

    const auto result = stitch_signals(g, chain, head, tail, n);
    const auto gaps = stitch_gaps(result, tail, tol);
    const double bound = 2.0 * std::pow(4.0, -static_cast<double>(n)) / 3.0;

    json links = json::array();
    bool all_ok = true;
    for (std::size_t j = 0; j < result.signals.size(); ++j) {
        const bool admissible = is_admissible(g, result.signals[j]);
        const bool below = gaps[j] < bound;
        all_ok = all_ok && admissible && below;
        links.push_back({{"index", static_cast<Index>(j) - 2},
                         {"signal", format_signal(result.signals[j], g)},
                         {"time", result.times[j]},
                         {"admissible", admissible},
                         {"gap", gaps[j]}});
    }
    json report = {{"N", n},
                   {"bound", bound},
                   {"links", links},
                   {"all_within_bound", all_ok},
                   {"config", cfg.resolved}};
    write_json(cfg, "stitch.json", report, console);
}

} // namespace skewflow
