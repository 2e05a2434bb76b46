#ifndef SKEWFLOW_RANDOM_HPP
#define SKEWFLOW_RANDOM_HPP

#include <cstddef>
#include <random>

#include "skewflow/graph.hpp"
#include "skewflow/sequence.hpp"

namespace skewflow {

using Rng = std::mt19937_64;

// Random graph on n vertices where every vertex keeps at least one in- and
// one out-edge, so it always passes validate_n_graph.
DirectedGraph random_valid_graph(Rng& rng, std::size_t n, double edge_probability);

// Random admissible eventually periodic sequence. Each side is a random walk
// continued until a vertex repeats; the loop it closes becomes the period.
// The core is a random walk of up to max_core symbols joining the two sides.
SymbolicSequence random_sequence(Rng& rng, const DirectedGraph& g, std::size_t max_core = 6,
                                 Index max_shift = 6);

} // namespace skewflow

#endif
