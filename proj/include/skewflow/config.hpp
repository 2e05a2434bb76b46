#ifndef SKEWFLOW_CONFIG_HPP
#define SKEWFLOW_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "skewflow/chain.hpp"
#include "skewflow/flow.hpp"
#include "skewflow/graph.hpp"

namespace skewflow {

// A reference set named in the analysis block, compared against every chain
// component by Hausdorff distance. One-dimensional systems only.
struct ReferenceSet {
    std::string name;
    Interval interval;
};

struct RunSettings {
    std::uint64_t seed = 1;
    double tolerance = 1e-10;
    std::string out;                    // empty: stdout / current directory
    std::optional<State> x0;
    std::optional<std::string> signal;  // signal literal for simulate
    double t_end = 1.0;
    double sample_dt = 0.1;
    Index stitch_n = 5;
    std::size_t chain_length = 3;
    std::optional<std::string> a, b;    // metric operands
    std::optional<State> xa, xb;        // product-metric states
};

// Everything one experiment needs. `resolved` is the input document with
// every default filled in; outputs embed it for provenance.
struct ExperimentConfig {
    DirectedGraph graph;
    std::optional<SwitchedSystem> system;
    std::vector<std::string> field_sources;
    std::optional<std::vector<std::size_t>> grid;
    ChainParameters chain;
    std::vector<ReferenceSet> references;
    RunSettings run;
    nlohmann::json resolved;
};

// Throws ValidationError (ParseError for malformed JSON) on bad input.
// Relative edge-list paths resolve against `base_dir`.
ExperimentConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

// Edge list text: one "u v" pair per line (labels or indices), '#' comments.
// Vertices are the labels in order of first appearance unless `vertex_count`
// fixes numeric vertices 0..n-1.
DirectedGraph parse_edge_list(const std::string& text, std::optional<std::size_t> vertex_count = {});

} // namespace skewflow

#endif
