#ifndef SKEWFLOW_FLOW_HPP
#define SKEWFLOW_FLOW_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "skewflow/expression.hpp"
#include "skewflow/graph.hpp"
#include "skewflow/signal.hpp"

namespace skewflow {

using State = std::vector<double>;

struct Interval {
    double lo;
    double hi;
};
using Box = std::vector<Interval>;

// A family of vector fields on a box M, one per switching-graph vertex,
// integrated with fixed-step RK4 at `substeps` steps per switching step h.
class SwitchedSystem {
public:
    SwitchedSystem(Box box, double step, std::vector<VectorField> fields, std::size_t substeps = 20,
                   bool clamp = false);

    std::size_t dimension() const { return box_.size(); }
    const Box& box() const { return box_; }
    double step() const { return step_; }
    std::size_t substeps() const { return substeps_; }
    bool clamps() const { return clamp_; }
    std::size_t field_count() const { return fields_.size(); }
    const VectorField& field(Vertex v) const { return fields_.at(v); }

    // Throws ValidationError unless there is one field per vertex of g.
    void require_compatible(const DirectedGraph& g) const;

    bool contains(std::span<const double> x) const;
    void project(std::span<double> x) const;

private:
    Box box_;
    double step_;
    std::vector<VectorField> fields_;
    std::size_t substeps_;
    bool clamp_;
};

// RK4 for a single field over dt (negative integrates backward), using
// ceil(|dt|/h) * substeps equal steps. Throws NumericError on a non-finite
// state.
State integrate_segment(const SwitchedSystem& sys, Vertex field, std::span<const double> x0, double dt);

// Integrates piecewise over the breakpoints of f in [0, t] (or [t, 0]),
// driving each piece with the field named by f on that piece.
State switched_flow(const SwitchedSystem& sys, double t, std::span<const double> x0,
                    const SwitchingSignal& f);

// A word driven from time 0 with the given piece durations, e.g. m full steps
// for an aligned signal or a split first and last cell for an offset one.
struct TimedWord {
    Word symbols;
    std::vector<double> durations;

    double total() const;
};

// m full steps of h spelling `word`.
TimedWord aligned_word(const Word& word, double step);
// The word as seen by a signal with offset tau in (0, h): symbols.size() must
// be m + 1; pieces tau, h, ..., h, h - tau.
TimedWord offset_word(const Word& symbols, double step, double tau);

State flow_word(const SwitchedSystem& sys, const TimedWord& word, std::span<const double> x0);

struct HybridState {
    State x;
    SwitchingSignal f;
};

HybridState skew_product(const SwitchedSystem& sys, double t, const HybridState& s0);

double euclidean_distance(std::span<const double> a, std::span<const double> b);

// Euclidean distance on M plus metric_delta on the signals.
double product_metric(const HybridState& a, const HybridState& b, double tol);

} // namespace skewflow

#endif
