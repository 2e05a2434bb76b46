#include "skewflow/flow.hpp"

#include <algorithm>
#include <cmath>

#include "skewflow/error.hpp"

namespace skewflow {

SwitchedSystem::SwitchedSystem(Box box, double step, std::vector<VectorField> fields,
                               std::size_t substeps, bool clamp)
    : box_(std::move(box)), step_(step), fields_(std::move(fields)), substeps_(substeps), clamp_(clamp) {
    if (box_.empty()) throw ValidationError("state box must have at least one axis");
    for (const auto& iv : box_)
        if (!(iv.lo <= iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi))
            throw ValidationError("state box axis is empty");
    if (!(step_ > 0.0) || !std::isfinite(step_)) throw ValidationError("step h must be positive");
    if (fields_.empty()) throw ValidationError("system needs at least one vector field");
    if (substeps_ == 0) throw ValidationError("substeps must be at least 1");
}

void SwitchedSystem::require_compatible(const DirectedGraph& g) const {
    if (fields_.size() != g.vertex_count())
        throw ValidationError("system has " + std::to_string(fields_.size()) + " fields but the graph has " +
                              std::to_string(g.vertex_count()) + " vertices");
}

bool SwitchedSystem::contains(std::span<const double> x) const {
    for (std::size_t i = 0; i < box_.size(); ++i)
        if (x[i] < box_[i].lo || x[i] > box_[i].hi) return false;
    return true;
}

void SwitchedSystem::project(std::span<double> x) const {
    for (std::size_t i = 0; i < box_.size(); ++i) x[i] = std::clamp(x[i], box_[i].lo, box_[i].hi);
}

State integrate_segment(const SwitchedSystem& sys, Vertex field, std::span<const double> x0, double dt) {
    const std::size_t d = sys.dimension();
    if (x0.size() != d) throw ValidationError("state dimension does not match the system");
    State x(x0.begin(), x0.end());
    if (dt == 0.0) return x;

    const auto& f = sys.field(field);
    const double cells = std::max(1.0, std::ceil(std::abs(dt) / sys.step() - 1e-9));
    const auto steps = static_cast<std::size_t>(cells) * sys.substeps();
    const double dt_step = dt / static_cast<double>(steps);

    State k1(d), k2(d), k3(d), k4(d), tmp(d);
    for (std::size_t s = 0; s < steps; ++s) {
        f(x, k1);
        for (std::size_t i = 0; i < d; ++i) tmp[i] = x[i] + 0.5 * dt_step * k1[i];
        f(tmp, k2);
        for (std::size_t i = 0; i < d; ++i) tmp[i] = x[i] + 0.5 * dt_step * k2[i];
        f(tmp, k3);
        for (std::size_t i = 0; i < d; ++i) tmp[i] = x[i] + dt_step * k3[i];
        f(tmp, k4);
        for (std::size_t i = 0; i < d; ++i) {
            x[i] += dt_step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            if (!std::isfinite(x[i])) throw NumericError("integration produced a non-finite state");
        }
        if (sys.clamps()) sys.project(x);
    }
    return x;
}

State switched_flow(const SwitchedSystem& sys, double t, std::span<const double> x0,
                    const SwitchingSignal& f) {
    if (std::abs(f.step() - sys.step()) > 1e-12 * sys.step())
        throw ValidationError("signal step differs from the system step");
    State x(x0.begin(), x0.end());
    const double min_piece = 1e-12 * sys.step();
    double s = 0.0;
    if (t > 0.0) {
        while (s < t) {
            const Index cell = f.cell_at(s);
            const double end = std::min(f.cell_start(cell + 1), t);
            if (end - s > min_piece) x = integrate_segment(sys, f.base().at(cell), x, end - s);
            s = end;
        }
    } else {
        while (s > t) {
            Index cell = f.cell_at(s);
            if (f.cell_start(cell) >= s - min_piece) --cell;
            const double start = std::max(f.cell_start(cell), t);
            if (s - start > min_piece) x = integrate_segment(sys, f.base().at(cell), x, start - s);
            s = start;
        }
    }
    return x;
}

double TimedWord::total() const {
    double sum = 0.0;
    for (double d : durations) sum += d;
    return sum;
}

TimedWord aligned_word(const Word& word, double step) {
    return TimedWord{word, std::vector<double>(word.size(), step)};
}

TimedWord offset_word(const Word& symbols, double step, double tau) {
    if (symbols.size() < 2) throw ValidationError("offset word needs at least two symbols");
    if (!(tau > 0.0 && tau < step)) throw ValidationError("offset must lie strictly inside (0, h)");
    std::vector<double> durations(symbols.size(), step);
    durations.front() = tau;
    durations.back() = step - tau;
    return TimedWord{symbols, std::move(durations)};
}

State flow_word(const SwitchedSystem& sys, const TimedWord& word, std::span<const double> x0) {
    State x(x0.begin(), x0.end());
    for (std::size_t i = 0; i < word.symbols.size(); ++i)
        x = integrate_segment(sys, word.symbols[i], x, word.durations[i]);
    return x;
}

HybridState skew_product(const SwitchedSystem& sys, double t, const HybridState& s0) {
    return HybridState{switched_flow(sys, t, s0.x, s0.f), shift(s0.f, t)};
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ValidationError("points have different dimensions");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(sum);
}

double product_metric(const HybridState& a, const HybridState& b, double tol) {
    return euclidean_distance(a.x, b.x) + metric_delta(a.f, b.f, tol);
}

} // namespace skewflow
