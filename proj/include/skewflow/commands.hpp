#ifndef SKEWFLOW_COMMANDS_HPP
#define SKEWFLOW_COMMANDS_HPP

#include <iosfwd>

#include <json.hpp>

#include "skewflow/config.hpp"

namespace skewflow {

// Each command writes its machine-readable result to `out_dir` when
// cfg.run.out is set, otherwise to `console`. Errors propagate as the
// exception types of error.hpp.

nlohmann::json analyze_graph_report(const DirectedGraph& g);
void cmd_analyze_graph(const ExperimentConfig& cfg, std::ostream& console);

// Rows `t,x1..xd,active_vertex` every sample_dt from 0 to t_end. On a
// numeric failure the rows produced so far are kept and a `# error:` line
// marks the output as partial before the exception is rethrown.
void cmd_simulate(const ExperimentConfig& cfg, std::ostream& console);

// Two sequences give d_Omega, two signals d_Delta, and with run.xa/run.xb
// set the product metric. `isometry` compares d_Omega(a, b) against
// d_Delta(sigma a, sigma b) for two sequences.
void cmd_metric(const ExperimentConfig& cfg, bool isometry, std::ostream& console);

// components.csv and summary.json.
void cmd_chain_sets(const ExperimentConfig& cfg, std::ostream& console);

// Stitches a random chain over the (complete) graph and reports the gaps.
void cmd_stitch_demo(const ExperimentConfig& cfg, std::ostream& console);

} // namespace skewflow

#endif
