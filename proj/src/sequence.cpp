#include "skewflow/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "skewflow/error.hpp"

namespace skewflow {

namespace {

Word rotated(const Word& w, Index r) {
    Word out(w.size());
    const auto n = static_cast<Index>(w.size());
    for (Index p = 0; p < n; ++p) out[p] = w[floor_mod(p + r, n)];
    return out;
}

std::vector<bool> membership_mask(const DirectedGraph& g, std::span<const Vertex> component) {
    std::vector<bool> mask(g.vertex_count(), false);
    for (Vertex v : component) {
        if (v >= g.vertex_count()) throw ValidationError("component vertex out of range");
        mask[v] = true;
    }
    return mask;
}

} // namespace

SymbolicSequence::SymbolicSequence(Word left_period, Word core, Word right_period, Index index_shift)
    : left_(std::move(left_period)), core_(std::move(core)), right_(std::move(right_period)),
      shift_(index_shift) {
    if (left_.empty() || right_.empty())
        throw ValidationError("sequence periods must be nonempty");
}

SymbolicSequence SymbolicSequence::constant(Vertex v) { return SymbolicSequence({v}, {}, {v}, 0); }

SymbolicSequence SymbolicSequence::periodic(Word period, Index index_shift) {
    Word copy = period;
    return SymbolicSequence(std::move(copy), {}, std::move(period), index_shift);
}

Vertex SymbolicSequence::at(Index i) const {
    const Index j = i + shift_;
    const auto c = static_cast<Index>(core_.size());
    if (j < 0) return left_[floor_mod(j, static_cast<Index>(left_.size()))];
    if (j < c) return core_[j];
    return right_[(j - c) % static_cast<Index>(right_.size())];
}

SymbolicSequence SymbolicSequence::shifted(Index k) const {
    return SymbolicSequence(left_, core_, right_, shift_ + k);
}

SymbolicSequence SymbolicSequence::splice(const SymbolicSequence& past, Index split,
                                          const Word& middle, const SymbolicSequence& future,
                                          Index future_offset) {
    const Index start = std::min(split, past.left_regime_end());
    const auto left_len = static_cast<Index>(past.left_.size());
    Word left = rotated(past.left_, floor_mod(start + past.shift_, left_len));

    Word core;
    for (Index i = start; i < split; ++i) core.push_back(past.at(i));
    core.insert(core.end(), middle.begin(), middle.end());

    const Index tail_begin = split + static_cast<Index>(middle.size());
    const Index periodic_from = std::max(tail_begin, future.right_regime_start() + future_offset);
    for (Index i = tail_begin; i < periodic_from; ++i) core.push_back(future.at(i - future_offset));

    const auto right_len = static_cast<Index>(future.right_.size());
    const Index phase = periodic_from - future_offset + future.shift_ -
                        static_cast<Index>(future.core_.size());
    Word right = rotated(future.right_, floor_mod(phase, right_len));
    return SymbolicSequence(std::move(left), std::move(core), std::move(right), -start);
}

bool SymbolicSequence::is_admissible(const DirectedGraph& g) const {
    auto in_range = [&](const Word& w) {
        return std::all_of(w.begin(), w.end(), [&](Vertex v) { return v < g.vertex_count(); });
    };
    if (!in_range(left_) || !in_range(core_) || !in_range(right_)) return false;
    if (!g.is_admissible(left_) || !g.is_admissible(core_) || !g.is_admissible(right_))
        return false;
    if (!g.has_edge(left_.back(), left_.front())) return false;
    if (!g.has_edge(right_.back(), right_.front())) return false;
    if (core_.empty()) return g.has_edge(left_.back(), right_.front());
    return g.has_edge(left_.back(), core_.front()) && g.has_edge(core_.back(), right_.front());
}

SymbolicSequence shift_discrete(const SymbolicSequence& x, Index k) { return x.shifted(k); }

bool same_values(const SymbolicSequence& x, const SymbolicSequence& y) {
    const Index lo = std::min(x.left_regime_end(), y.left_regime_end());
    const Index hi = std::max(x.right_regime_start(), y.right_regime_start());
    const Index left_lcm = std::lcm(static_cast<Index>(x.left_period().size()),
                                    static_cast<Index>(y.left_period().size()));
    const Index right_lcm = std::lcm(static_cast<Index>(x.right_period().size()),
                                     static_cast<Index>(y.right_period().size()));
    for (Index i = lo - left_lcm; i < hi + right_lcm; ++i)
        if (x.at(i) != y.at(i)) return false;
    return true;
}

Index tail_cutoff(double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol)) throw ValidationError("tolerance must be positive");
    Index n = 0;
    double tail = 2.0 / 3.0;
    while (tail > tol) {
        tail /= 4.0;
        ++n;
    }
    return n;
}

double metric_omega(const SymbolicSequence& x, const SymbolicSequence& y, double tol) {
    const Index n = tail_cutoff(tol);
    // Smallest weights first.
    double sum = 0.0;
    for (Index k = n; k >= 0; --k) {
        const double w = std::ldexp(1.0, static_cast<int>(-2 * k));
        if (x.at(k) != y.at(k)) sum += w;
        if (k != 0 && x.at(-k) != y.at(-k)) sum += w;
    }
    return sum;
}

std::vector<Word> enumerate_admissible_words(const DirectedGraph& g,
                                             std::span<const Vertex> component,
                                             std::size_t length) {
    if (length == 0) throw ValidationError("word length must be positive");
    const auto mask = membership_mask(g, component);
    Word starts(component.begin(), component.end());
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());

    std::vector<Word> out;
    Word current;
    // Depth-first in ascending successor order yields lexicographic output.
    auto extend = [&](auto&& self) -> void {
        if (current.size() == length) {
            out.push_back(current);
            return;
        }
        for (Vertex w : g.successors(current.back())) {
            if (!mask[w]) continue;
            current.push_back(w);
            self(self);
            current.pop_back();
        }
    };
    for (Vertex s : starts) {
        current.assign(1, s);
        extend(extend);
    }
    return out;
}

void require_component(const DirectedGraph& g, std::span<const Vertex> component) {
    if (component.empty()) throw ValidationError("component is empty");
    const auto decomposition = scc(g);
    const auto id = decomposition.component_of.at(component.front());
    Word sorted(component.begin(), component.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted != decomposition.components[id])
        throw ValidationError("vertex set is not a strongly connected component");
}

SymbolicSequence transitive_sequence(const DirectedGraph& g, std::span<const Vertex> component,
                                     std::size_t length) {
    require_component(g, component);
    const auto words = enumerate_admissible_words(g, component, length);
    if (words.empty())
        throw ValidationError("component carries no cycle; its lift is empty");

    // Joins a word ending at u to one starting at v: the interior vertices of
    // the shortest walk u -> v with at least one edge.
    auto connector = [&](Vertex u, Vertex v) {
        auto walk = connecting_walk(g, u, v);
        if (!walk) throw ValidationError("component is not strongly connected");
        return Word(walk->begin() + 1, walk->end() - 1);
    };

    Word period;
    for (std::size_t k = 0; k < words.size(); ++k) {
        if (k > 0) {
            const auto bridge = connector(words[k - 1].back(), words[k].front());
            period.insert(period.end(), bridge.begin(), bridge.end());
        }
        period.insert(period.end(), words[k].begin(), words[k].end());
    }
    const auto closing = connector(words.back().back(), words.front().front());
    period.insert(period.end(), closing.begin(), closing.end());

    // Left tail: the shortest cycle through the first symbol, ending just
    // before it so the junction into the right period is an edge.
    const Vertex anchor = period.front();
    auto loop = connecting_walk(g, anchor, anchor);
    Word left(loop->begin(), loop->end() - 1);
    return SymbolicSequence(std::move(left), {}, std::move(period), 0);
}

ChaosCertificate chaos_certificate(const DirectedGraph& g, std::span<const Vertex> component) {
    require_component(g, component);
    const auto mask = membership_mask(g, component);
    Word members(component.begin(), component.end());
    std::sort(members.begin(), members.end());

    auto inner_successors = [&](Vertex v) {
        Word out;
        for (Vertex w : g.successors(v))
            if (mask[w]) out.push_back(w);
        return out;
    };

    for (Vertex v : members) {
        if (inner_successors(v).size() >= 2)
            return ChaosCertificate{ChaosCertificate::Kind::chaotic, {}, v};
    }
    if (inner_successors(members.front()).empty())
        return ChaosCertificate{ChaosCertificate::Kind::trivial, {}, 0};

    Word orbit{members.front()};
    for (Vertex v = inner_successors(members.front()).front(); v != members.front();
         v = inner_successors(v).front())
        orbit.push_back(v);
    return ChaosCertificate{ChaosCertificate::Kind::periodic_orbit, std::move(orbit), 0};
}

} // namespace skewflow
