#ifndef SKEWFLOW_SEQUENCE_HPP
#define SKEWFLOW_SEQUENCE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "skewflow/graph.hpp"

namespace skewflow {

using Index = std::int64_t;

// Non-negative remainder.
inline Index floor_mod(Index a, Index m) {
    const Index r = a % m;
    return r < 0 ? r + m : r;
}

// A bi-infinite vertex sequence that is eventually periodic in both
// directions. In raw coordinates j the values are
//
//     ... left left left | core[0] ... core[c-1] | right right right ...
//                          j = 0                   j = c
//
// with left[|left|-1] sitting at j = -1. The public index i maps to
// j = i + index_shift, so shifting is O(1).
class SymbolicSequence {
public:
    SymbolicSequence(Word left_period, Word core, Word right_period, Index index_shift = 0);

    static SymbolicSequence constant(Vertex v);
    // Purely periodic: at(i) = period[(i + index_shift) mod |period|].
    static SymbolicSequence periodic(Word period, Index index_shift = 0);

    // Values of `past` before `split`, then `middle`, then
    // future.at(i - future_offset) from split + |middle| on.
    static SymbolicSequence splice(const SymbolicSequence& past, Index split, const Word& middle,
                                   const SymbolicSequence& future, Index future_offset);

    Vertex at(Index i) const;

    const Word& left_period() const { return left_; }
    const Word& core() const { return core_; }
    const Word& right_period() const { return right_; }
    Index index_shift() const { return shift_; }

    SymbolicSequence shifted(Index k) const;

    // Every junction and period wrap-around is an edge of g.
    bool is_admissible(const DirectedGraph& g) const;

    // First public index at which the sequence is in its right-periodic
    // regime; everything below -index_shift is in the left regime.
    Index right_regime_start() const { return static_cast<Index>(core_.size()) - shift_; }
    Index left_regime_end() const { return -shift_; }

private:
    Word left_;
    Word core_;
    Word right_;
    Index shift_;
};

// at(result, i) == at(x, i + k).
SymbolicSequence shift_discrete(const SymbolicSequence& x, Index k);

// Exact value-wise equality, decided on a finite window covering both
// transient parts plus one common period on each side.
bool same_values(const SymbolicSequence& x, const SymbolicSequence& y);

// Smallest N >= 0 with 2 * 4^-N / 3 <= tol, the bound on the weighted tail
// beyond |i| > N. Throws ValidationError for tol <= 0.
Index tail_cutoff(double tol);

// Sum over |i| <= N of [x_i != y_i] 4^-|i|, N = tail_cutoff(tol).
double metric_omega(const SymbolicSequence& x, const SymbolicSequence& y, double tol);

// All length-`length` walks inside `component`, lexicographic in vertex index.
std::vector<Word> enumerate_admissible_words(const DirectedGraph& g,
                                             std::span<const Vertex> component,
                                             std::size_t length);

// An admissible sequence whose right period contains every admissible word of
// length <= `length` over the component as a factor. Words are concatenated in
// lexicographic order with shortest connectors and the result closed into a
// cycle. Throws ValidationError when the component is not a full SCC or
// carries no cycle.
SymbolicSequence transitive_sequence(const DirectedGraph& g, std::span<const Vertex> component,
                                     std::size_t length);

struct ChaosCertificate {
    enum class Kind {
        periodic_orbit, // every vertex has exactly one successor inside C
        chaotic,        // witness has >= 2 successors inside C
        trivial,        // single vertex without self-loop: empty lift
    };
    Kind kind;
    Word orbit;         // periodic_orbit only, starts at the smallest vertex
    Vertex witness = 0; // chaotic only
};

ChaosCertificate chaos_certificate(const DirectedGraph& g, std::span<const Vertex> component);

// Throws ValidationError unless `component` is exactly one SCC of g.
void require_component(const DirectedGraph& g, std::span<const Vertex> component);

} // namespace skewflow

#endif
