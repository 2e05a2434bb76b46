#ifndef SKEWFLOW_GRAPH_HPP
#define SKEWFLOW_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace skewflow {

using Vertex = std::uint32_t;
using Word = std::vector<Vertex>;
using Edge = std::pair<Vertex, Vertex>;

// Compressed successor lists. Used both for switching graphs and for the much
// larger chain graphs built over grid cells.
struct Adjacency {
    std::vector<std::size_t> offsets{0};
    std::vector<std::size_t> targets;

    std::size_t node_count() const { return offsets.size() - 1; }
    std::span<const std::size_t> neighbors(std::size_t node) const {
        return {targets.data() + offsets[node], offsets[node + 1] - offsets[node]};
    }
};

// Iterative Tarjan. Returns the component id of every node; ids are assigned
// in order of completion, i.e. reverse topological order of the condensation.
std::vector<std::size_t> tarjan_components(const Adjacency& adj, std::size_t& component_count);

// The switching rule: a directed graph on vertices 0..n-1 given by its
// adjacency relation. Self-loops are allowed, duplicate edges are not.
class DirectedGraph {
public:
    DirectedGraph(std::size_t vertex_count, std::vector<Edge> edges,
                  std::vector<std::string> labels = {});

    static DirectedGraph complete(std::size_t n);
    static DirectedGraph cycle(std::size_t n);

    std::size_t vertex_count() const { return successors_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    const Word& successors(Vertex v) const { return successors_.at(v); }
    const Word& predecessors(Vertex v) const { return predecessors_.at(v); }
    std::size_t out_degree(Vertex v) const { return successors(v).size(); }
    std::size_t in_degree(Vertex v) const { return predecessors(v).size(); }

    bool has_edge(Vertex u, Vertex v) const;
    bool is_complete() const { return edge_count_ == vertex_count() * vertex_count(); }
    bool is_admissible(std::span<const Vertex> word) const;

    std::vector<Edge> edges() const;
    const std::string& label(Vertex v) const { return labels_.at(v); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<Vertex> find_label(std::string_view label) const;

    Adjacency adjacency() const;

    // Word rendered with labels: concatenated when every label is one
    // character, space separated otherwise.
    std::string format_word(std::span<const Vertex> word) const;

private:
    std::vector<Word> successors_;
    std::vector<Word> predecessors_;
    std::vector<std::string> labels_;
    std::size_t edge_count_ = 0;
};

struct ValidationReport {
    std::vector<Vertex> missing_successor;
    std::vector<Vertex> missing_predecessor;

    bool ok() const { return missing_successor.empty() && missing_predecessor.empty(); }
    // Sorted union of both lists.
    std::vector<Vertex> offending() const;
    std::string describe(const DirectedGraph& g) const;
};

// Every vertex must have in-degree >= 1 and out-degree >= 1 so that a
// bi-infinite admissible path runs through it.
ValidationReport validate_n_graph(const DirectedGraph& g);

// Throws ValidationError carrying the report when validation fails.
void require_valid(const DirectedGraph& g);

struct SccDecomposition {
    // Each component sorted ascending; components ordered by smallest vertex.
    std::vector<Word> components;
    std::vector<std::size_t> component_of;
    // Sorted, no duplicates, no self pairs.
    std::vector<std::pair<std::size_t, std::size_t>> condensation_edges;
    // True when the component carries a cycle (size > 1 or a self-loop).
    std::vector<bool> cyclic;

    std::size_t size() const { return components.size(); }
};

SccDecomposition scc(const DirectedGraph& g);

// Shortest directed path u..v inclusive, BFS with lowest-index tie breaking.
// u == v yields [u].
std::optional<Word> admissible_path(const DirectedGraph& g, Vertex u, Vertex v);

// Shortest walk with at least one edge from u to v (inclusive). For u == v
// this is the shortest cycle through u.
std::optional<Word> connecting_walk(const DirectedGraph& g, Vertex u, Vertex v);

// Reflexive-transitive closure of the condensation edges.
class MorseOrder {
public:
    explicit MorseOrder(std::size_t n) : n_(n), closure_(n * n, false) {}

    std::size_t size() const { return n_; }
    bool precedes(std::size_t a, std::size_t b) const { return closure_[a * n_ + b]; }
    void set(std::size_t a, std::size_t b) { closure_[a * n_ + b] = true; }

    bool is_partial_order() const;
    // Strict pairs a < b, i.e. precedes(a,b) with a != b.
    std::vector<std::pair<std::size_t, std::size_t>> strict_pairs() const;

private:
    std::size_t n_;
    std::vector<bool> closure_;
};

MorseOrder morse_order(const SccDecomposition& decomposition);

} // namespace skewflow

#endif
