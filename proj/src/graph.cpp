#include "skewflow/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

#include "skewflow/error.hpp"

namespace skewflow {

std::vector<std::size_t> tarjan_components(const Adjacency& adj, std::size_t& component_count) {
    constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
    const std::size_t n = adj.node_count();
    std::vector<std::size_t> index(n, unvisited), lowlink(n, 0), component(n, unvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    // (node, next neighbor position)
    std::vector<std::pair<std::size_t, std::size_t>> call;
    std::size_t next_index = 0;
    component_count = 0;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.emplace_back(root, 0);
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!call.empty()) {
            auto& [node, pos] = call.back();
            const auto nbrs = adj.neighbors(node);
            if (pos < nbrs.size()) {
                const std::size_t w = nbrs[pos++];
                if (index[w] == unvisited) {
                    index[w] = lowlink[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    lowlink[node] = std::min(lowlink[node], index[w]);
                }
                continue;
            }
            const std::size_t finished = node;
            call.pop_back();
            if (!call.empty()) {
                auto& parent = call.back().first;
                lowlink[parent] = std::min(lowlink[parent], lowlink[finished]);
            }
            if (lowlink[finished] == index[finished]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    component[w] = component_count;
                } while (w != finished);
                ++component_count;
            }
        }
    }
    return component;
}

namespace {

std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (n <= 26)
            labels.emplace_back(1, static_cast<char>('A' + i));
        else
            labels.push_back(std::to_string(i));
    }
    return labels;
}

} // namespace

DirectedGraph::DirectedGraph(std::size_t vertex_count, std::vector<Edge> edges,
                             std::vector<std::string> labels)
    : successors_(vertex_count), predecessors_(vertex_count) {
    if (vertex_count == 0) throw ValidationError("graph must have at least one vertex");
    for (const auto& [u, v] : edges) {
        if (u >= vertex_count || v >= vertex_count) {
            throw ValidationError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") references a vertex outside 0.." +
                                  std::to_string(vertex_count - 1));
        }
        successors_[u].push_back(v);
        predecessors_[v].push_back(u);
    }
    for (Vertex v = 0; v < vertex_count; ++v) {
        auto& out = successors_[v];
        std::sort(out.begin(), out.end());
        if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
            throw ValidationError("duplicate edge out of vertex " + std::to_string(v));
        }
        std::sort(predecessors_[v].begin(), predecessors_[v].end());
    }
    edge_count_ = edges.size();

    if (labels.empty()) {
        labels_ = default_labels(vertex_count);
    } else {
        if (labels.size() != vertex_count)
            throw ValidationError("label count does not match vertex count");
        auto sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ValidationError("vertex labels must be unique");
        for (const auto& l : labels) {
            if (l.empty() || l.find_first_of(" \t\n,()[]=") != std::string::npos)
                throw ValidationError("invalid vertex label '" + l + "'");
        }
        labels_ = std::move(labels);
    }
}

DirectedGraph DirectedGraph::complete(std::size_t n) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v) edges.emplace_back(u, v);
    return DirectedGraph(n, std::move(edges));
}

DirectedGraph DirectedGraph::cycle(std::size_t n) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) edges.emplace_back(u, static_cast<Vertex>((u + 1) % n));
    return DirectedGraph(n, std::move(edges));
}

bool DirectedGraph::has_edge(Vertex u, Vertex v) const {
    if (u >= vertex_count()) return false;
    const auto& out = successors_[u];
    return std::binary_search(out.begin(), out.end(), v);
}

bool DirectedGraph::is_admissible(std::span<const Vertex> word) const {
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (word[i] >= vertex_count()) return false;
        if (i > 0 && !has_edge(word[i - 1], word[i])) return false;
    }
    return true;
}

std::vector<Edge> DirectedGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < vertex_count(); ++u)
        for (Vertex v : successors_[u]) out.emplace_back(u, v);
    return out;
}

std::optional<Vertex> DirectedGraph::find_label(std::string_view label) const {
    for (Vertex v = 0; v < labels_.size(); ++v)
        if (labels_[v] == label) return v;
    return std::nullopt;
}

Adjacency DirectedGraph::adjacency() const {
    Adjacency adj;
    adj.offsets.reserve(vertex_count() + 1);
    adj.targets.reserve(edge_count_);
    for (const auto& out : successors_) {
        adj.targets.insert(adj.targets.end(), out.begin(), out.end());
        adj.offsets.push_back(adj.targets.size());
    }
    return adj;
}

std::string DirectedGraph::format_word(std::span<const Vertex> word) const {
    const bool single = std::all_of(labels_.begin(), labels_.end(),
                                    [](const std::string& l) { return l.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (!single && i > 0) out += ' ';
        out += label(word[i]);
    }
    return out;
}

std::vector<Vertex> ValidationReport::offending() const {
    std::vector<Vertex> all = missing_successor;
    all.insert(all.end(), missing_predecessor.begin(), missing_predecessor.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

std::string ValidationReport::describe(const DirectedGraph& g) const {
    if (ok()) return "ok";
    std::ostringstream os;
    os << "graph is not an N-graph:";
    for (Vertex v : missing_successor) os << " " << g.label(v) << " has out-degree 0;";
    for (Vertex v : missing_predecessor) os << " " << g.label(v) << " has in-degree 0;";
    return os.str();
}

ValidationReport validate_n_graph(const DirectedGraph& g) {
    ValidationReport report;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (g.out_degree(v) == 0) report.missing_successor.push_back(v);
        if (g.in_degree(v) == 0) report.missing_predecessor.push_back(v);
    }
    return report;
}

void require_valid(const DirectedGraph& g) {
    const auto report = validate_n_graph(g);
    if (!report.ok()) throw ValidationError(report.describe(g));
}

SccDecomposition scc(const DirectedGraph& g) {
    require_valid(g);
    std::size_t count = 0;
    const auto raw = tarjan_components(g.adjacency(), count);

    // Renumber by smallest member vertex. Vertices are scanned in order, so
    // first appearance is the smallest member.
    std::vector<std::size_t> renumber(count, count);
    std::size_t next = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (renumber[raw[v]] == count) renumber[raw[v]] = next++;

    SccDecomposition out;
    out.components.resize(count);
    out.component_of.resize(g.vertex_count());
    out.cyclic.assign(count, false);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const std::size_t c = renumber[raw[v]];
        out.component_of[v] = c;
        out.components[c].push_back(v);
    }
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        for (Vertex v : g.successors(u)) {
            const auto cu = out.component_of[u], cv = out.component_of[v];
            if (cu != cv)
                out.condensation_edges.emplace_back(cu, cv);
            else
                out.cyclic[cu] = true;
        }
    }
    std::sort(out.condensation_edges.begin(), out.condensation_edges.end());
    out.condensation_edges.erase(
        std::unique(out.condensation_edges.begin(), out.condensation_edges.end()),
        out.condensation_edges.end());
    return out;
}

namespace {

// BFS from source; neighbors visited in ascending order so ties resolve to
// the lowest vertex index.
std::optional<Word> bfs_path(const DirectedGraph& g, Vertex source, Vertex target) {
    constexpr Vertex none = std::numeric_limits<Vertex>::max();
    std::vector<Vertex> parent(g.vertex_count(), none);
    parent[source] = source;
    std::deque<Vertex> queue{source};
    while (!queue.empty()) {
        const Vertex u = queue.front();
        queue.pop_front();
        if (u == target) {
            Word path{u};
            for (Vertex cur = u; cur != source;) {
                cur = parent[cur];
                path.push_back(cur);
            }
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (Vertex w : g.successors(u)) {
            if (parent[w] != none) continue;
            parent[w] = u;
            queue.push_back(w);
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<Word> admissible_path(const DirectedGraph& g, Vertex u, Vertex v) {
    if (u >= g.vertex_count() || v >= g.vertex_count())
        throw ValidationError("admissible_path: vertex out of range");
    return bfs_path(g, u, v);
}

std::optional<Word> connecting_walk(const DirectedGraph& g, Vertex u, Vertex v) {
    if (u >= g.vertex_count() || v >= g.vertex_count())
        throw ValidationError("connecting_walk: vertex out of range");
    std::optional<Word> best;
    for (Vertex s : g.successors(u)) {
        auto tail = admissible_path(g, s, v);
        if (tail && (!best || tail->size() + 1 < best->size())) {
            Word walk{u};
            walk.insert(walk.end(), tail->begin(), tail->end());
            best = std::move(walk);
        }
    }
    return best;
}

bool MorseOrder::is_partial_order() const {
    for (std::size_t a = 0; a < n_; ++a) {
        if (!precedes(a, a)) return false;
        for (std::size_t b = 0; b < n_; ++b) {
            if (a != b && precedes(a, b) && precedes(b, a)) return false;
            if (!precedes(a, b)) continue;
            for (std::size_t c = 0; c < n_; ++c)
                if (precedes(b, c) && !precedes(a, c)) return false;
        }
    }
    return true;
}

std::vector<std::pair<std::size_t, std::size_t>> MorseOrder::strict_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b)
            if (a != b && precedes(a, b)) out.emplace_back(a, b);
    return out;
}

MorseOrder morse_order(const SccDecomposition& decomposition) {
    const std::size_t n = decomposition.size();
    MorseOrder order(n);
    std::vector<std::vector<std::size_t>> out(n);
    for (const auto& [a, b] : decomposition.condensation_edges) out[a].push_back(b);
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<std::size_t> stack{a};
        order.set(a, a);
        while (!stack.empty()) {
            const auto c = stack.back();
            stack.pop_back();
            for (auto d : out[c]) {
                if (order.precedes(a, d)) continue;
                order.set(a, d);
                stack.push_back(d);
            }
        }
    }
    return order;
}

} // namespace skewflow
