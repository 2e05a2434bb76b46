#ifndef SKEWFLOW_LITERAL_HPP
#define SKEWFLOW_LITERAL_HPP

#include <optional>
#include <string>
#include <string_view>

#include "skewflow/graph.hpp"
#include "skewflow/sequence.hpp"
#include "skewflow/signal.hpp"

namespace skewflow {

// Text forms:
//   sequence: left=(word) core=[word] right=(word) shift=k
//   signal:   <sequence> tau=<real> h=<real>
// Words list vertices by label or index, separated by spaces or commas; a
// run of single-character labels may be written without separators ("AB").
// `left` defaults to `right`, `core` to empty, `shift` and `tau` to 0.
// Parsed sequences are checked for admissibility against g.

SymbolicSequence parse_sequence_literal(std::string_view text, const DirectedGraph& g);

// `default_step` supplies h when the literal omits it.
SwitchingSignal parse_signal_literal(std::string_view text, const DirectedGraph& g,
                                     std::optional<double> default_step = std::nullopt);

// True when the literal carries a tau= or h= field.
bool is_signal_literal(std::string_view text);

std::string format_sequence(const SymbolicSequence& x, const DirectedGraph& g);
std::string format_signal(const SwitchingSignal& f, const DirectedGraph& g);

// Shortest round-trip decimal form.
std::string format_real(double value);

} // namespace skewflow

#endif
