#include "skewflow/signal.hpp"

#include <algorithm>
#include <cmath>

#include "skewflow/error.hpp"

namespace skewflow {

namespace {

constexpr double snap_tolerance = 1e-9;

double weight(Index i) { return std::ldexp(1.0, static_cast<int>(-2 * (i < 0 ? -i : i))); }

// Number of whole steps in t; throws unless t is a positive multiple of step.
Index whole_cells(double t, double step, const char* what) {
    const double q = t / step;
    const double r = std::nearbyint(q);
    if (!std::isfinite(q) || std::abs(q - r) > snap_tolerance || r < 1.0)
        throw ValidationError(std::string(what) + " must be a positive multiple of the step");
    return static_cast<Index>(r);
}

} // namespace

Index cell_floor(double q) {
    const double r = std::nearbyint(q);
    if (std::abs(q - r) <= snap_tolerance) return static_cast<Index>(r);
    return static_cast<Index>(std::floor(q));
}

SwitchingSignal::SwitchingSignal(SymbolicSequence base, double step, double offset)
    : base_(std::move(base)), step_(step), offset_(0.0) {
    if (!(step > 0.0) || !std::isfinite(step)) throw ValidationError("step h must be positive");
    if (!std::isfinite(offset)) throw ValidationError("signal offset must be finite");
    const double q = offset / step;
    Index whole = cell_floor(q);
    double frac = q - static_cast<double>(whole);
    if (frac < snap_tolerance) frac = 0.0;
    if (frac > 1.0 - snap_tolerance) {
        frac = 0.0;
        ++whole;
    }
    offset_ = frac * step;
    base_ = base_.shifted(-whole);
}

Index SwitchingSignal::cell_at(double t) const { return cell_floor((t - offset_) / step_); }

SwitchingSignal sigma_embed(const SymbolicSequence& x, double step) {
    return SwitchingSignal(x, step, 0.0);
}

SwitchingSignal shift(const SwitchingSignal& f, double t) {
    return SwitchingSignal(f.base(), f.step(), f.offset() - t);
}

bool is_admissible(const DirectedGraph& g, const SwitchingSignal& f) {
    return f.base().is_admissible(g);
}

void require_same_step(const SwitchingSignal& f, const SwitchingSignal& g) {
    if (std::abs(f.step() - g.step()) > 1e-12 * std::max(f.step(), g.step()))
        throw ValidationError("signals use different steps h");
}

double cell_mismatch(const SwitchingSignal& f, const SwitchingSignal& g, Index i) {
    // Within time cell i, a signal with offset fraction a holds base cell i-1
    // on [0, a) and base cell i on [a, 1).
    const double a = f.offset() / f.step();
    const double b = g.offset() / g.step();
    const double lo = std::min(a, b), hi = std::max(a, b);
    const auto& fb = f.base();
    const auto& gb = g.base();

    double measure = 0.0;
    if (lo > 0.0 && fb.at(i - 1) != gb.at(i - 1)) measure += lo;
    if (hi > lo) {
        const Vertex fv = a < b ? fb.at(i) : fb.at(i - 1);
        const Vertex gv = a < b ? gb.at(i - 1) : gb.at(i);
        if (fv != gv) measure += hi - lo;
    }
    if (fb.at(i) != gb.at(i)) measure += 1.0 - hi;
    return measure;
}

double metric_delta(const SwitchingSignal& f, const SwitchingSignal& g, double tol) {
    require_same_step(f, g);
    const Index n = tail_cutoff(tol);
    double sum = 0.0;
    for (Index k = n; k >= 0; --k) {
        sum += cell_mismatch(f, g, k) * weight(k);
        if (k != 0) sum += cell_mismatch(f, g, -k) * weight(k);
    }
    return sum;
}

ContinuityGap continuity_gap(const SwitchingSignal& f, const SwitchingSignal& g, double t,
                             double tol) {
    const double lhs = metric_delta(shift(f, t), shift(g, t), tol);
    const Index cells = -cell_floor(-std::abs(t) / f.step());
    const double bound = std::ldexp(1.0, static_cast<int>(2 * cells)) * metric_delta(f, g, tol);
    return {lhs, bound};
}

bool lift_membership(const SwitchingSignal& f, std::span<const Vertex> component,
                     std::size_t horizon) {
    auto inside = [&](Vertex v) {
        return std::find(component.begin(), component.end(), v) != component.end();
    };
    const auto& base = f.base();
    if (!std::all_of(base.left_period().begin(), base.left_period().end(), inside)) return false;
    if (!std::all_of(base.right_period().begin(), base.right_period().end(), inside)) return false;
    const auto scan = std::min(horizon, base.core().size());
    return std::all_of(base.core().begin(), base.core().begin() + static_cast<std::ptrdiff_t>(scan),
                       inside);
}

Index agreement_radius_for(double eps) {
    if (!(eps > 0.0)) throw ValidationError("eps must be positive");
    Index n = 1;
    while (8.0 / 3.0 * std::ldexp(1.0, static_cast<int>(-2 * n)) >= eps) ++n;
    return n;
}

SensitivityWitness sensitivity_witness(const SwitchingSignal& f, double eps,
                                       const DirectedGraph& g) {
    if (!f.aligned()) throw ValidationError("sensitivity witness requires an aligned signal");
    if (!is_admissible(g, f)) throw ValidationError("signal is not admissible for the graph");
    if (scc(g).size() != 1)
        throw ValidationError("sensitivity witness requires a single strongly connected component");
    Vertex branch = 0;
    bool found = false;
    for (Vertex v = 0; v < g.vertex_count() && !found; ++v) {
        if (g.out_degree(v) >= 2) {
            branch = v;
            found = true;
        }
    }
    if (!found)
        throw ValidationError("sensitivity witness requires a vertex with out-degree >= 2");

    const Index n = agreement_radius_for(eps);
    const auto& base = f.base();

    // Steer from f's value at cell n to the branching vertex, then leave f on
    // the first cell where both sit at the branch.
    const Word path = *admissible_path(g, base.at(n), branch);
    Word middle(path.begin() + 1, path.end());
    Index divergence = n + static_cast<Index>(path.size()) - 1;
    if (divergence == n || base.at(divergence) == branch) {
        const Vertex followed = base.at(divergence + 1);
        const auto& out = g.successors(branch);
        const auto other = std::find_if(out.begin(), out.end(), [&](Vertex w) { return w != followed; });
        middle.push_back(*other);
        ++divergence;
    }

    const Vertex last = middle.back();
    const Word loop = *connecting_walk(g, last, last);
    Word period(loop.begin() + 1, loop.end());
    const Index tail_start = n + 1 + static_cast<Index>(middle.size());
    auto partner = SymbolicSequence::splice(base, n + 1, middle,
                                            SymbolicSequence::periodic(std::move(period)), tail_start);
    return {SwitchingSignal(std::move(partner), f.step()), n, divergence};
}

StitchResult stitch_signals(const DirectedGraph& g, const std::vector<ChainLink>& chain,
                            const SwitchingSignal& f_head, const SwitchingSignal& g_tail, Index n) {
    if (!g.is_complete()) throw ValidationError("stitching requires a complete graph");
    if (n < 1) throw ValidationError("stitching window N must be positive");
    const double h = f_head.step();
    auto check = [&](const SwitchingSignal& s) {
        require_same_step(f_head, s);
        if (!s.aligned()) throw ValidationError("stitching requires aligned signals");
        if (!is_admissible(g, s)) throw ValidationError("stitched input is not admissible");
    };
    check(f_head);
    check(g_tail);

    // Timeline cells: [0, 2n+1) from f_head, then each link's own cells, then
    // g_tail delayed by n cells.
    const Index head_cells = 2 * n + 1;
    Word middle;
    std::vector<Index> starts{n, head_cells};
    std::vector<double> times{static_cast<double>(n) * h, static_cast<double>(n + 1) * h};
    for (const auto& link : chain) {
        check(link.signal);
        const Index cells = whole_cells(link.time, h, "link time");
        for (Index r = 0; r < cells; ++r) middle.push_back(link.signal.base().at(r));
        starts.push_back(starts.back() + cells);
        times.push_back(link.time);
    }
    times.push_back(static_cast<double>(n) * h);
    // starts now holds S_-1, S_0, ..., S_k.
    const Index tail_start = starts.back();
    const auto timeline =
        SymbolicSequence::splice(f_head.base(), head_cells, middle, g_tail.base(), tail_start + n);

    StitchResult result;
    result.signals.push_back(f_head);
    for (Index s : starts) result.signals.push_back(sigma_embed(timeline.shifted(s), h));
    result.times = std::move(times);
    return result;
}

std::vector<double> stitch_gaps(const StitchResult& result, const SwitchingSignal& g_tail,
                                double tol) {
    std::vector<double> gaps;
    for (std::size_t j = 0; j < result.signals.size(); ++j) {
        const auto& next = j + 1 < result.signals.size() ? result.signals[j + 1] : g_tail;
        gaps.push_back(metric_delta(shift(result.signals[j], result.times[j]), next, tol));
    }
    return gaps;
}

} // namespace skewflow
