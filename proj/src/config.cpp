#include "skewflow/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "skewflow/error.hpp"
#include "skewflow/expression.hpp"

namespace skewflow {

using nlohmann::json;

namespace {

void reject_unknown(const json& block, const std::string& where, std::initializer_list<const char*> keys) {
    if (!block.is_object()) throw ValidationError(where + " must be an object");
    const std::set<std::string> known(keys.begin(), keys.end());
    for (const auto& item : block.items())
        if (!known.count(item.key())) throw ValidationError("unknown key '" + item.key() + "' in " + where);
}

template <typename T>
T value_of(const json& block, const char* key, const std::string& where) {
    try {
        return block.at(key).get<T>();
    } catch (const json::out_of_range&) {
        throw ValidationError(where + "." + key + " is required");
    } catch (const json::type_error&) {
        throw ValidationError(where + "." + key + " has the wrong type");
    }
}

template <typename T>
T value_or(const json& block, const char* key, T fallback, const std::string& where) {
    if (!block.contains(key)) return fallback;
    return value_of<T>(block, key, where);
}

Interval parse_interval(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ValidationError(where + " must be a [lo, hi] pair");
    const Interval iv{j[0].get<double>(), j[1].get<double>()};
    if (!(iv.lo <= iv.hi)) throw ValidationError(where + " has lo > hi");
    return iv;
}

Vertex parse_endpoint(const json& j, const std::map<std::string, Vertex>& labels, std::size_t n) {
    if (j.is_number_integer()) {
        if (j.get<long long>() < 0) throw ValidationError("edge endpoints must be non-negative");
        const auto v = j.get<std::size_t>();
        if (v >= n) throw ValidationError("edge endpoint " + std::to_string(v) + " out of range");
        return static_cast<Vertex>(v);
    }
    if (j.is_string()) {
        const auto it = labels.find(j.get<std::string>());
        if (it == labels.end()) throw ValidationError("edge endpoint '" + j.get<std::string>() + "' is not a vertex");
        return it->second;
    }
    throw ValidationError("edge endpoints must be labels or vertex indices");
}

DirectedGraph parse_graph(const json& block, const std::filesystem::path& base_dir, json& resolved) {
    reject_unknown(block, "graph", {"complete", "cycle", "vertices", "labels", "edges", "edge_list"});
    std::optional<DirectedGraph> g;
    if (block.contains("complete")) {
        g = DirectedGraph::complete(value_of<std::size_t>(block, "complete", "graph"));
    } else if (block.contains("cycle")) {
        g = DirectedGraph::cycle(value_of<std::size_t>(block, "cycle", "graph"));
    } else if (block.contains("edge_list")) {
        auto path = std::filesystem::path(value_of<std::string>(block, "edge_list", "graph"));
        if (path.is_relative()) path = base_dir / path;
        std::ifstream in(path);
        if (!in) throw ValidationError("cannot read edge list " + path.string());
        std::stringstream text;
        text << in.rdbuf();
        std::optional<std::size_t> n;
        if (block.contains("vertices")) n = value_of<std::size_t>(block, "vertices", "graph");
        g = parse_edge_list(text.str(), n);
    } else {
        std::vector<std::string> labels;
        std::size_t n = 0;
        const json& vertices = block.contains("vertices") ? block.at("vertices") : json();
        if (vertices.is_array()) {
            labels = vertices.get<std::vector<std::string>>();
            n = labels.size();
        } else if (vertices.is_number_integer() && vertices.get<long long>() > 0) {
            n = vertices.get<std::size_t>();
        } else {
            throw ValidationError("graph needs 'complete', 'cycle', 'edge_list', or 'vertices' with 'edges'");
        }
        if (block.contains("labels")) labels = value_of<std::vector<std::string>>(block, "labels", "graph");
        std::map<std::string, Vertex> by_label;
        for (std::size_t i = 0; i < labels.size(); ++i) by_label[labels[i]] = static_cast<Vertex>(i);
        std::vector<Edge> edges;
        if (!block.contains("edges") || !block.at("edges").is_array())
            throw ValidationError("graph.edges must be a list of [from, to] pairs");
        for (const auto& e : block.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw ValidationError("graph.edges entries must be [from, to]");
            edges.emplace_back(parse_endpoint(e[0], by_label, n), parse_endpoint(e[1], by_label, n));
        }
        g.emplace(n, std::move(edges), std::move(labels));
    }
    json edges = json::array();
    for (const auto& [u, v] : g->edges()) edges.push_back({g->label(u), g->label(v)});
    resolved = {{"vertices", g->labels()}, {"edges", edges}};
    return *g;
}

VectorField parse_field(const json& j, std::size_t dimension, std::string& source) {
    if (j.is_string()) {
        if (dimension != 1) throw ValidationError("a bare expression field needs a one-dimensional box");
        source = j.get<std::string>();
        return expression_field({source});
    }
    if (j.is_array()) {
        const auto parts = j.get<std::vector<std::string>>();
        if (parts.size() != dimension) throw ValidationError("field has the wrong number of components");
        source = json(parts).dump();
        return expression_field(parts);
    }
    if (j.is_object() && j.contains("poly")) {
        if (dimension != 1) throw ValidationError("polynomial fields need a one-dimensional box");
        source = j.dump();
        return polynomial_field(j.at("poly").get<std::vector<double>>());
    }
    if (j.is_object() && j.contains("linear")) {
        const auto a = j.at("linear").get<std::vector<std::vector<double>>>();
        if (a.size() != dimension) throw ValidationError("linear field matrix does not match the box");
        source = j.dump();
        return linear_field(a);
    }
    throw ValidationError("field must be an expression, a list of expressions, {\"poly\":..} or {\"linear\":..}");
}

} // namespace

DirectedGraph parse_edge_list(const std::string& text, std::optional<std::size_t> vertex_count) {
    std::vector<std::string> labels;
    std::map<std::string, Vertex> by_label;
    std::vector<Edge> edges;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    auto vertex = [&](const std::string& token) -> Vertex {
        if (vertex_count) {
            std::size_t pos = 0;
            unsigned long v = 0;
            try {
                v = std::stoul(token, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != token.size() || v >= *vertex_count)
                throw ValidationError("edge list line " + std::to_string(line_no) + ": bad vertex '" + token + "'");
            return static_cast<Vertex>(v);
        }
        auto [it, inserted] = by_label.emplace(token, static_cast<Vertex>(labels.size()));
        if (inserted) labels.push_back(token);
        return it->second;
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string u, v, extra;
        if (!(fields >> u)) continue;
        if (!(fields >> v) || (fields >> extra))
            throw ValidationError("edge list line " + std::to_string(line_no) + " must hold exactly two vertices");
        const Vertex a = vertex(u);
        edges.emplace_back(a, vertex(v));
    }
    if (vertex_count) return DirectedGraph(*vertex_count, std::move(edges));
    const std::size_t n = labels.size();
    return DirectedGraph(n, std::move(edges), std::move(labels));
}

ExperimentConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
    reject_unknown(doc, "config", {"graph", "system", "analysis", "run"});
    if (!doc.contains("graph")) throw ValidationError("config needs a graph block");

    json resolved_graph;
    ExperimentConfig cfg{parse_graph(doc.at("graph"), base_dir, resolved_graph), {}, {}, {}, {}, {}, {}, {}};
    cfg.resolved["graph"] = resolved_graph;
    const std::size_t n = cfg.graph.vertex_count();

    std::size_t dimension = 0;
    if (doc.contains("system")) {
        const json& s = doc.at("system");
        reject_unknown(s, "system", {"box", "h", "substeps", "clamp", "fields"});
        Box box;
        const json& jb = s.contains("box") ? s.at("box") : json();
        if (jb.is_array() && jb.size() == 2 && jb[0].is_number()) {
            box.push_back(parse_interval(jb, "system.box"));
        } else if (jb.is_array() && !jb.empty()) {
            for (const auto& axis : jb) box.push_back(parse_interval(axis, "system.box axis"));
        } else {
            throw ValidationError("system.box must be [lo, hi] or a list of such pairs");
        }
        dimension = box.size();
        const double h = value_of<double>(s, "h", "system");
        const auto substeps = value_or<std::size_t>(s, "substeps", 20, "system");
        const bool clamp = value_or<bool>(s, "clamp", false, "system");
        if (!s.contains("fields") || !s.at("fields").is_array())
            throw ValidationError("system.fields must list one field per vertex");
        const json& jf = s.at("fields");
        if (jf.size() != n)
            throw ValidationError("system.fields has " + std::to_string(jf.size()) + " entries but the graph has " +
                                  std::to_string(n) + " vertices");
        std::vector<VectorField> fields;
        for (const auto& f : jf) {
            cfg.field_sources.emplace_back();
            fields.push_back(parse_field(f, dimension, cfg.field_sources.back()));
        }
        cfg.system.emplace(box, h, std::move(fields), substeps, clamp);

        json rbox = json::array();
        for (const auto& iv : box) rbox.push_back({iv.lo, iv.hi});
        cfg.resolved["system"] = {{"box", rbox}, {"h", h}, {"substeps", substeps}, {"clamp", clamp}, {"fields", jf}};
    }

    if (doc.contains("analysis")) {
        const json& a = doc.at("analysis");
        reject_unknown(a, "analysis", {"grid", "epsilon", "m", "mode", "q", "max_work", "threads", "references"});
        if (!cfg.system) throw ValidationError("the analysis block needs a system block");
        if (a.contains("grid")) {
            std::vector<std::size_t> grid;
            if (a.at("grid").is_number_integer()) {
                if (a.at("grid").get<long long>() < 1) throw ValidationError("analysis.grid must be positive");
                grid.assign(dimension, a.at("grid").get<std::size_t>());
            }
            else
                grid = value_of<std::vector<std::size_t>>(a, "grid", "analysis");
            if (grid.size() != dimension) throw ValidationError("analysis.grid needs one count per box axis");
            cfg.grid = grid;
        }
        auto& p = cfg.chain;
        p.epsilon = value_or<double>(a, "epsilon", p.epsilon, "analysis");
        p.m = value_or<std::size_t>(a, "m", p.m, "analysis");
        p.mode = parse_chain_mode(value_or<std::string>(a, "mode", to_string(p.mode), "analysis"));
        p.offset_samples = value_or<std::size_t>(a, "q", p.offset_samples, "analysis");
        p.max_work = value_or<double>(a, "max_work", p.max_work, "analysis");
        p.threads = value_or<std::size_t>(a, "threads", p.threads, "analysis");
        if (!(p.epsilon > 0.0)) throw ValidationError("analysis.epsilon must be positive");
        if (p.m == 0) throw ValidationError("analysis.m must be at least 1");
        if (p.offset_samples == 0) throw ValidationError("analysis.q must be at least 1");

        json refs = json::array();
        if (a.contains("references")) {
            for (const auto& r : a.at("references")) {
                reject_unknown(r, "analysis.references entry", {"name", "interval", "point"});
                ReferenceSet ref;
                ref.name = value_or<std::string>(r, "name", "ref" + std::to_string(cfg.references.size()), "reference");
                if (r.contains("interval")) {
                    ref.interval = parse_interval(r.at("interval"), "reference interval");
                } else if (r.contains("point")) {
                    const double x = value_of<double>(r, "point", "reference");
                    ref.interval = {x, x};
                } else {
                    throw ValidationError("reference needs an interval or a point");
                }
                if (dimension != 1) throw ValidationError("reference sets are supported for one-dimensional boxes");
                cfg.references.push_back(ref);
                refs.push_back({{"name", ref.name}, {"interval", {ref.interval.lo, ref.interval.hi}}});
            }
        }
        cfg.resolved["analysis"] = {{"grid", cfg.grid ? json(*cfg.grid) : json()},
                                    {"epsilon", p.epsilon},
                                    {"m", p.m},
                                    {"mode", to_string(p.mode)},
                                    {"q", p.offset_samples},
                                    {"max_work", p.max_work},
                                    {"references", refs}};
    }

    json run = json::object();
    if (doc.contains("run")) {
        const json& r = doc.at("run");
        reject_unknown(r, "run", {"seed", "tolerance", "out", "x0", "signal", "t_end", "sample_dt", "N",
                                  "chain_length", "a", "b", "xa", "xb"});
        auto& s = cfg.run;
        s.seed = value_or<std::uint64_t>(r, "seed", s.seed, "run");
        s.tolerance = value_or<double>(r, "tolerance", s.tolerance, "run");
        s.out = value_or<std::string>(r, "out", s.out, "run");
        if (r.contains("x0")) s.x0 = value_of<State>(r, "x0", "run");
        if (r.contains("signal")) s.signal = value_of<std::string>(r, "signal", "run");
        s.t_end = value_or<double>(r, "t_end", s.t_end, "run");
        s.sample_dt = value_or<double>(r, "sample_dt", s.sample_dt, "run");
        s.stitch_n = value_or<Index>(r, "N", s.stitch_n, "run");
        s.chain_length = value_or<std::size_t>(r, "chain_length", s.chain_length, "run");
        if (r.contains("a")) s.a = value_of<std::string>(r, "a", "run");
        if (r.contains("b")) s.b = value_of<std::string>(r, "b", "run");
        if (r.contains("xa")) s.xa = value_of<State>(r, "xa", "run");
        if (r.contains("xb")) s.xb = value_of<State>(r, "xb", "run");
    }
    if (!(cfg.run.tolerance > 0.0)) throw ValidationError("run.tolerance must be positive");
    if (!(cfg.run.sample_dt > 0.0)) throw ValidationError("run.sample_dt must be positive");
    const auto& s = cfg.run;
    run = {{"seed", s.seed}, {"tolerance", s.tolerance}, {"t_end", s.t_end}, {"sample_dt", s.sample_dt},
           {"N", s.stitch_n}, {"chain_length", s.chain_length}};
    if (s.x0) run["x0"] = *s.x0;
    if (s.signal) run["signal"] = *s.signal;
    if (s.a) run["a"] = *s.a;
    if (s.b) run["b"] = *s.b;
    if (s.xa) run["xa"] = *s.xa;
    if (s.xb) run["xb"] = *s.xb;
    cfg.resolved["run"] = run;
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what(), e.byte);
    }
    return parse_config(doc, path.parent_path());
}

} // namespace skewflow
