#include "skewflow/chain.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "skewflow/error.hpp"

namespace skewflow {

Grid::Grid(Box box, std::vector<std::size_t> counts) : box_(std::move(box)), counts_(std::move(counts)) {
    if (box_.empty()) throw ValidationError("grid box must have at least one axis");
    if (counts_.size() != box_.size())
        throw ValidationError("grid needs one cell count per box axis");
    double diag = 0.0;
    for (std::size_t i = 0; i < box_.size(); ++i) {
        if (counts_[i] == 0) throw ValidationError("grid cell counts must be at least 1");
        if (!(box_[i].hi > box_[i].lo)) throw ValidationError("grid box is degenerate along an axis");
        widths_.push_back((box_[i].hi - box_[i].lo) / static_cast<double>(counts_[i]));
        diag += widths_.back() * widths_.back();
        total_ *= counts_[i];
    }
    radius_ = 0.5 * std::sqrt(diag);
}

std::vector<std::size_t> Grid::coordinates(std::size_t cell) const {
    std::vector<std::size_t> c(dimension());
    for (std::size_t i = 0; i < dimension(); ++i) {
        c[i] = cell % counts_[i];
        cell /= counts_[i];
    }
    return c;
}

std::size_t Grid::index(std::span<const std::size_t> coordinates) const {
    std::size_t idx = 0;
    for (std::size_t i = dimension(); i-- > 0;) idx = idx * counts_[i] + coordinates[i];
    return idx;
}

State Grid::center(std::size_t cell) const {
    if (cell >= total_) throw ValidationError("cell index out of range");
    State x(dimension());
    const auto c = coordinates(cell);
    for (std::size_t i = 0; i < dimension(); ++i)
        x[i] = box_[i].lo + (static_cast<double>(c[i]) + 0.5) * widths_[i];
    return x;
}

std::optional<std::size_t> Grid::locate(std::span<const double> x) const {
    std::vector<std::size_t> c(dimension());
    for (std::size_t i = 0; i < dimension(); ++i) {
        if (x[i] < box_[i].lo || x[i] > box_[i].hi) return std::nullopt;
        const double k = std::floor((x[i] - box_[i].lo) / widths_[i]);
        c[i] = std::min(static_cast<std::size_t>(k), counts_[i] - 1);
    }
    return index(c);
}

std::vector<std::size_t> Grid::cells_near(std::span<const double> x, double reach) const {
    const std::size_t d = dimension();
    std::vector<std::size_t> lo(d), hi(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double a = std::ceil((x[i] - reach - box_[i].lo) / widths_[i] - 0.5);
        const double b = std::floor((x[i] + reach - box_[i].lo) / widths_[i] - 0.5);
        const double last = static_cast<double>(counts_[i] - 1);
        if (b < 0.0 || a > last) return {};
        lo[i] = static_cast<std::size_t>(std::max(a, 0.0));
        hi[i] = static_cast<std::size_t>(std::min(b, last));
        if (lo[i] > hi[i]) return {};
    }
    std::vector<std::size_t> out;
    std::vector<std::size_t> c = lo;
    for (;;) {
        double dist2 = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double ci = box_[i].lo + (static_cast<double>(c[i]) + 0.5) * widths_[i];
            dist2 += (ci - x[i]) * (ci - x[i]);
        }
        if (std::sqrt(dist2) <= reach) out.push_back(index(c));
        std::size_t axis = 0;
        while (axis < d && c[axis] == hi[axis]) {
            c[axis] = lo[axis];
            ++axis;
        }
        if (axis == d) break;
        ++c[axis];
    }
    std::sort(out.begin(), out.end());
    return out;
}

Grid build_grid(const Box& box, const std::vector<std::size_t>& counts) { return Grid(box, counts); }

const char* to_string(ChainMode mode) {
    return mode == ChainMode::free_switching ? "free-switching" : "graph-constrained";
}

ChainMode parse_chain_mode(std::string_view text) {
    if (text == "free-switching" || text == "free") return ChainMode::free_switching;
    if (text == "graph-constrained" || text == "constrained") return ChainMode::graph_constrained;
    throw ValidationError("unknown chain mode '" + std::string(text) + "'");
}

ChainNode ChainGraph::node(std::size_t id) const {
    if (mode == ChainMode::free_switching) return {id, 0};
    return {id / vertex_count, static_cast<Vertex>(id % vertex_count)};
}

bool ChainGraph::has_edge(std::size_t from, std::size_t to) const {
    const auto nb = edges.neighbors(from);
    return std::binary_search(nb.begin(), nb.end(), to);
}

std::vector<Word> admissible_words(const DirectedGraph& g, std::size_t m) {
    std::vector<Word> words;
    if (m == 0) return words;
    Word current;
    auto extend = [&](auto&& self) -> void {
        if (current.size() == m) {
            words.push_back(current);
            return;
        }
        auto visit = [&](Vertex v) {
            current.push_back(v);
            self(self);
            current.pop_back();
        };
        if (current.empty())
            for (Vertex v = 0; v < g.vertex_count(); ++v) visit(v);
        else
            for (Vertex v : g.successors(current.back())) visit(v);
    };
    extend(extend);
    return words;
}

State step_image(const SwitchedSystem& sys, const DirectedGraph& g, const Grid& grid, std::size_t cell,
                 const Word& word) {
    sys.require_compatible(g);
    if (word.empty()) throw ValidationError("step word must have length at least 1");
    for (Vertex v : word)
        if (v >= g.vertex_count()) throw ValidationError("step word uses an unknown vertex");
    if (!g.is_admissible(word)) throw ValidationError("step word is not admissible for the graph");
    return flow_word(sys, aligned_word(word, sys.step()), grid.center(cell));
}

namespace {

// Corners for low dimensions, axis extremes otherwise.
std::vector<State> boundary_samples(const Grid& grid, std::size_t cell) {
    const State c = grid.center(cell);
    const std::size_t d = grid.dimension();
    std::vector<State> out;
    if (d <= 3) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
            State p = c;
            for (std::size_t i = 0; i < d; ++i) p[i] += ((mask >> i) & 1 ? 0.5 : -0.5) * grid.widths()[i];
            out.push_back(std::move(p));
        }
    } else {
        for (std::size_t i = 0; i < d; ++i)
            for (double s : {-0.5, 0.5}) {
                State p = c;
                p[i] += s * grid.widths()[i];
                out.push_back(std::move(p));
            }
    }
    return out;
}

std::vector<TimedWord> timed_words(const DirectedGraph& g, const ChainParameters& params, double step) {
    std::vector<TimedWord> out;
    for (const auto& w : admissible_words(g, params.m)) out.push_back(aligned_word(w, step));
    if (params.offset_samples > 1) {
        const auto longer = admissible_words(g, params.m + 1);
        for (std::size_t k = 1; k < params.offset_samples; ++k) {
            const double tau = step * static_cast<double>(k) / static_cast<double>(params.offset_samples);
            for (const auto& w : longer) out.push_back(offset_word(w, step, tau));
        }
    }
    return out;
}

template <typename Work>
void parallel_for(std::size_t count, std::size_t threads, Work&& work) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(count, 1));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                work(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    if (threads <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(run);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
}

Adjacency to_adjacency(std::vector<std::vector<std::size_t>>& lists) {
    Adjacency adj;
    adj.offsets.reserve(lists.size() + 1);
    for (auto& l : lists) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
        adj.targets.insert(adj.targets.end(), l.begin(), l.end());
        adj.offsets.push_back(adj.targets.size());
    }
    return adj;
}

} // namespace

CellImage cell_image(const SwitchedSystem& sys, const Grid& grid, std::size_t cell, const TimedWord& word) {
    CellImage img{flow_word(sys, word, grid.center(cell)), 0.0};
    for (const auto& p : boundary_samples(grid, cell))
        img.spread = std::max(img.spread, euclidean_distance(flow_word(sys, word, p), img.center));
    return img;
}

ChainGraph build_chain_graph(const SwitchedSystem& sys, const DirectedGraph& g, const Grid& grid,
                             const ChainParameters& params) {
    sys.require_compatible(g);
    if (grid.dimension() != sys.dimension()) throw ValidationError("grid and system dimensions differ");
    if (!(params.epsilon > 0.0)) throw ValidationError("epsilon must be positive");
    if (params.m == 0) throw ValidationError("m must be at least 1");
    if (params.offset_samples == 0) throw ValidationError("offset samples q must be at least 1");

    const auto words = timed_words(g, params, sys.step());
    const std::size_t n = g.vertex_count();
    const bool constrained = params.mode == ChainMode::graph_constrained;
    const std::size_t nodes = constrained ? grid.cell_count() * n : grid.cell_count();
    const double work = static_cast<double>(nodes) * static_cast<double>(words.size());
    if (work > params.max_work) {
        std::ostringstream msg;
        msg << "chain graph needs " << nodes << " nodes x " << words.size() << " timed words = " << work
            << " word evaluations, above the limit " << params.max_work << "; use a coarser grid, smaller m"
            << " or fewer offset samples";
        throw ResourceLimitError(msg.str());
    }

    std::vector<std::vector<std::size_t>> lists(nodes);
    parallel_for(grid.cell_count(), params.threads, [&](std::size_t cell) {
        for (const auto& w : words) {
            const CellImage img = cell_image(sys, grid, cell, w);
            const auto targets = grid.cells_near(img.center, params.epsilon + img.spread + grid.radius());
            if (!constrained) {
                auto& out = lists[cell];
                out.insert(out.end(), targets.begin(), targets.end());
                continue;
            }
            auto& out = lists[cell * n + w.symbols.front()];
            for (Vertex v : g.successors(w.symbols.back()))
                for (std::size_t b : targets) out.push_back(b * n + v);
        }
    });

    ChainGraph cg{params.mode, params, grid.cell_count(), n, words.size(), to_adjacency(lists)};
    return cg;
}

std::vector<ChainComponent> chain_components(const ChainGraph& cg) {
    std::size_t count = 0;
    const auto comp = tarjan_components(cg.edges, count);
    std::vector<std::vector<std::size_t>> members(count);
    for (std::size_t v = 0; v < comp.size(); ++v) members[comp[v]].push_back(v);

    std::vector<ChainComponent> out;
    for (auto& nodes : members) {
        const bool viable = nodes.size() > 1 || cg.has_edge(nodes.front(), nodes.front());
        if (!viable) continue;
        ChainComponent c;
        c.nodes = std::move(nodes);
        for (std::size_t id : c.nodes) c.cells.push_back(cg.node(id).cell);
        std::sort(c.cells.begin(), c.cells.end());
        c.cells.erase(std::unique(c.cells.begin(), c.cells.end()), c.cells.end());
        c.viable = true;
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const ChainComponent& a, const ChainComponent& b) {
        if (a.nodes.size() != b.nodes.size()) return a.nodes.size() > b.nodes.size();
        return a.nodes.front() < b.nodes.front();
    });
    return out;
}

bool chain_equivalent(const Grid& grid, const std::vector<ChainComponent>& components,
                      std::span<const double> x, std::span<const double> y) {
    const auto a = grid.locate(x);
    const auto b = grid.locate(y);
    if (!a || !b) throw ValidationError("chain_equivalent points must lie in the grid box");
    for (const auto& c : components)
        if (std::binary_search(c.cells.begin(), c.cells.end(), *a) &&
            std::binary_search(c.cells.begin(), c.cells.end(), *b))
            return true;
    return false;
}

std::vector<ChainNode> lift_kernel(const SwitchedSystem& sys, const DirectedGraph& g, const Grid& grid,
                                   std::span<const std::size_t> cells, double landing_tolerance) {
    sys.require_compatible(g);
    std::vector<std::size_t> e(cells.begin(), cells.end());
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    const std::size_t n = g.vertex_count();
    const std::size_t count = e.size() * n;
    auto local = [&](std::size_t cell) -> std::optional<std::size_t> {
        const auto it = std::lower_bound(e.begin(), e.end(), cell);
        if (it == e.end() || *it != cell) return std::nullopt;
        return static_cast<std::size_t>(it - e.begin());
    };

    // Local node id = position in e * n + vertex.
    std::vector<std::vector<std::size_t>> succ(count), pred(count);
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (Vertex v = 0; v < n; ++v) {
            const CellImage img = cell_image(sys, grid, e[i], aligned_word({v}, sys.step()));
            for (std::size_t b : grid.cells_near(img.center, landing_tolerance + img.spread + grid.radius())) {
                const auto j = local(b);
                if (!j) continue;
                for (Vertex w : g.successors(v)) {
                    succ[i * n + v].push_back(*j * n + w);
                    pred[*j * n + w].push_back(i * n + v);
                }
            }
        }
    }

    std::vector<bool> alive(count, true);
    std::vector<std::size_t> out_deg(count), in_deg(count), queue;
    for (std::size_t k = 0; k < count; ++k) {
        out_deg[k] = succ[k].size();
        in_deg[k] = pred[k].size();
        if (out_deg[k] == 0 || in_deg[k] == 0) {
            alive[k] = false;
            queue.push_back(k);
        }
    }
    while (!queue.empty()) {
        const std::size_t k = queue.back();
        queue.pop_back();
        for (std::size_t s : succ[k])
            if (alive[s] && --in_deg[s] == 0) {
                alive[s] = false;
                queue.push_back(s);
            }
        for (std::size_t p : pred[k])
            if (alive[p] && --out_deg[p] == 0) {
                alive[p] = false;
                queue.push_back(p);
            }
    }

    std::vector<ChainNode> kernel;
    for (std::size_t k = 0; k < count; ++k)
        if (alive[k]) kernel.push_back({e[k / n], static_cast<Vertex>(k % n)});
    return kernel;
}

double hausdorff_distance(const std::vector<State>& a, const std::vector<State>& b) {
    if (a.empty() || b.empty()) throw ValidationError("Hausdorff distance needs nonempty sets");
    auto directed = [](const std::vector<State>& from, const std::vector<State>& to) {
        double worst = 0.0;
        for (const auto& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : to) best = std::min(best, euclidean_distance(p, q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

double hausdorff_distance(std::span<const double> points, Interval interval) {
    if (points.empty()) throw ValidationError("Hausdorff distance needs a nonempty point set");
    if (!(interval.lo <= interval.hi)) throw ValidationError("reference interval is empty");
    std::vector<double> p(points.begin(), points.end());
    std::sort(p.begin(), p.end());

    double worst = 0.0;
    for (double x : p) worst = std::max({worst, interval.lo - x, x - interval.hi});

    // The distance from the interval to the nearest point peaks at an end of
    // the interval or at a midpoint between neighbouring points.
    auto nearest = [&](double y) {
        const auto it = std::lower_bound(p.begin(), p.end(), y);
        double best = std::numeric_limits<double>::infinity();
        if (it != p.end()) best = *it - y;
        if (it != p.begin()) best = std::min(best, y - *std::prev(it));
        return best;
    };
    worst = std::max({worst, nearest(interval.lo), nearest(interval.hi)});
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        const double mid = 0.5 * (p[i] + p[i + 1]);
        if (mid >= interval.lo && mid <= interval.hi) worst = std::max(worst, nearest(mid));
    }
    return worst;
}

std::vector<State> cell_centers(const Grid& grid, std::span<const std::size_t> cells) {
    std::vector<State> out;
    out.reserve(cells.size());
    for (std::size_t c : cells) out.push_back(grid.center(c));
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> cell_runs(std::span<const std::size_t> cells) {
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    for (std::size_t c : cells) {
        if (!runs.empty() && runs.back().second + 1 == c)
            runs.back().second = c;
        else
            runs.emplace_back(c, c);
    }
    return runs;
}

} // namespace skewflow
