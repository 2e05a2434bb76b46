#ifndef SKEWFLOW_SIGNAL_HPP
#define SKEWFLOW_SIGNAL_HPP

#include <span>
#include <vector>

#include "skewflow/graph.hpp"
#include "skewflow/sequence.hpp"

namespace skewflow {

// floor(q), except that q within 1e-9 of an integer snaps to it. Keeps cell
// lookups at nominal breakpoints such as 3*h stable under rounding.
Index cell_floor(double q);

// A piecewise-constant switching signal: value base.at(n) on the cell
// [offset + n*step, offset + (n+1)*step). Right-continuous. The offset is
// kept in [0, step); whole cells are absorbed into the base index shift.
class SwitchingSignal {
public:
    SwitchingSignal(SymbolicSequence base, double step, double offset = 0.0);

    const SymbolicSequence& base() const { return base_; }
    double step() const { return step_; }
    double offset() const { return offset_; }
    bool aligned() const { return offset_ == 0.0; }

    // Base index of the cell covering t.
    Index cell_at(double t) const;
    Vertex value_at(double t) const { return base_.at(cell_at(t)); }

    // Time at which base cell n begins.
    double cell_start(Index n) const { return offset_ + static_cast<double>(n) * step_; }

private:
    SymbolicSequence base_;
    double step_;
    double offset_;
};

SwitchingSignal sigma_embed(const SymbolicSequence& x, double step);

// value_at(shift(f, t), s) == value_at(f, s + t).
SwitchingSignal shift(const SwitchingSignal& f, double t);

bool is_admissible(const DirectedGraph& g, const SwitchingSignal& f);

// Throws ValidationError unless both signals use the same step.
void require_same_step(const SwitchingSignal& f, const SwitchingSignal& g);

// Weighted mismatch measure: cell [ih, (i+1)h) contributes the fraction of it
// on which the signals differ, times 4^-|i|. Integrated exactly for
// |i| <= tail_cutoff(tol).
double metric_delta(const SwitchingSignal& f, const SwitchingSignal& g, double tol);

// Fraction of cell i of the time axis on which f and g disagree.
double cell_mismatch(const SwitchingSignal& f, const SwitchingSignal& g, Index i);

struct ContinuityGap {
    double lhs;   // d(shift(f,t), shift(g,t))
    double bound; // 4^ceil(|t|/h) * d(f,g)
};

ContinuityGap continuity_gap(const SwitchingSignal& f, const SwitchingSignal& g, double t,
                             double tol);

// True iff every symbol the signal takes lies in `component`. Periods are
// scanned fully, the core up to `horizon` symbols.
bool lift_membership(const SwitchingSignal& f, std::span<const Vertex> component,
                     std::size_t horizon);

struct SensitivityWitness {
    SwitchingSignal partner;
    Index agreement_radius; // partner == f on [-N h, N h]
    Index divergence_cell;  // partner != f on the whole cell [m h, (m+1) h)
};

// Smallest N with sum over |i| >= N of 4^-|i| below eps.
Index agreement_radius_for(double eps);

// Builds a partner within eps of f that disagrees with it on a full cell
// beyond the agreement window. Requires g to be a single SCC with a vertex of
// out-degree >= 2 and f to be cell aligned.
SensitivityWitness sensitivity_witness(const SwitchingSignal& f, double eps,
                                       const DirectedGraph& g);

struct ChainLink {
    SwitchingSignal signal;
    double time;
};

struct StitchResult {
    // g_-2, g_-1, g_0, ..., g_k and their flow times.
    std::vector<SwitchingSignal> signals;
    std::vector<double> times;
};

// Concatenates the chain signals into one admissible timeline and returns its
// shifts at the link start times. g_-2 is f_head itself and g_k runs into
// g_tail; consecutive links satisfy d(shift(g_j, t_j), g_j+1) < 2 * 4^-N / 3.
// Each g_j agrees with the chain's f_j on [0, t_j). Requires a complete
// graph, aligned signals and times that are positive multiples of the step.
StitchResult stitch_signals(const DirectedGraph& g, const std::vector<ChainLink>& chain,
                            const SwitchingSignal& f_head, const SwitchingSignal& g_tail,
                            Index n);

// d(shift(g_j, t_j), g_j+1) for consecutive outputs, the last entry
// comparing shift(g_k, t_k) against g_tail.
std::vector<double> stitch_gaps(const StitchResult& result, const SwitchingSignal& g_tail,
                                double tol);

} // namespace skewflow

#endif
