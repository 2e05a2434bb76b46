#include "skewflow/random.hpp"

#include <algorithm>
#include <cstdint>

#include "skewflow/error.hpp"

namespace skewflow {

DirectedGraph random_valid_graph(Rng& rng, std::size_t n, double edge_probability) {
    if (n == 0) throw ValidationError("random graph needs at least one vertex");
    std::bernoulli_distribution coin(edge_probability);
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
    std::vector<bool> present(n * n, false);
    for (std::size_t k = 0; k < n * n; ++k) present[k] = coin(rng);
    for (Vertex v = 0; v < n; ++v) {
        bool out = false, in = false;
        for (Vertex w = 0; w < n; ++w) {
            out = out || present[v * n + w];
            in = in || present[w * n + v];
        }
        if (!out) present[v * n + pick(rng)] = true;
        if (!in) present[pick(rng) * n + v] = true;
    }
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (present[u * n + v]) edges.emplace_back(u, v);
    return DirectedGraph(n, std::move(edges));
}

namespace {

// Walk until a vertex repeats. Returns the walk w_0..w_L with w_L == w_loop.
std::pair<Word, std::size_t> walk_to_loop(Rng& rng, const DirectedGraph& g, Vertex start, bool backward) {
    Word walk{start};
    std::vector<std::size_t> seen(g.vertex_count(), SIZE_MAX);
    seen[start] = 0;
    for (;;) {
        const Word& next = backward ? g.predecessors(walk.back()) : g.successors(walk.back());
        if (next.empty()) throw ValidationError("random walk hit a vertex without neighbours");
        std::uniform_int_distribution<std::size_t> pick(0, next.size() - 1);
        const Vertex v = next[pick(rng)];
        if (seen[v] != SIZE_MAX) {
            const std::size_t loop = seen[v];
            walk.push_back(v);
            return {walk, loop};
        }
        seen[v] = walk.size();
        walk.push_back(v);
    }
}

Vertex along(const Word& walk, std::size_t loop, std::size_t k) {
    const std::size_t len = walk.size() - 1;
    if (k < len) return walk[k];
    return walk[loop + (k - loop) % (len - loop)];
}

} // namespace

SymbolicSequence random_sequence(Rng& rng, const DirectedGraph& g, std::size_t max_core, Index max_shift) {
    require_valid(g);
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(g.vertex_count() - 1));
    const Vertex start = pick(rng);
    const auto [fwd, j] = walk_to_loop(rng, g, start, false);
    const auto [bwd, i] = walk_to_loop(rng, g, start, true);

    auto value = [&](Index p) -> Vertex {
        if (p >= 0) return along(fwd, j, static_cast<std::size_t>(p));
        return along(bwd, i, static_cast<std::size_t>(-p));
    };

    // Positions <= a follow the backward loop, positions >= b the forward one.
    // Stretch the core at random so the literal form varies too.
    std::uniform_int_distribution<std::size_t> pad(0, max_core);
    const Index a = -static_cast<Index>(i) - static_cast<Index>(pad(rng));
    const Index b = std::max(static_cast<Index>(j), a + 1) + static_cast<Index>(pad(rng));

    Word core;
    for (Index p = a + 1; p < b; ++p) core.push_back(value(p));
    const Index left_len = static_cast<Index>(bwd.size() - 1 - i);
    const Index right_len = static_cast<Index>(fwd.size() - 1 - j);
    Word left, right;
    for (Index r = 0; r < left_len; ++r) left.push_back(value(a + 1 - left_len + r));
    for (Index r = 0; r < right_len; ++r) right.push_back(value(b + r));

    std::uniform_int_distribution<Index> offset(-max_shift, max_shift);
    return SymbolicSequence(std::move(left), std::move(core), std::move(right), -(a + 1) + offset(rng));
}

} // namespace skewflow
