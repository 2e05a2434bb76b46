#ifndef SKEWFLOW_CHAIN_HPP
#define SKEWFLOW_CHAIN_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "skewflow/flow.hpp"
#include "skewflow/graph.hpp"

namespace skewflow {

// Uniform partition of a box. Cell indices are row-major with axis 0 varying
// fastest.
class Grid {
public:
    Grid(Box box, std::vector<std::size_t> counts);

    std::size_t dimension() const { return box_.size(); }
    std::size_t cell_count() const { return total_; }
    const Box& box() const { return box_; }
    const std::vector<std::size_t>& counts() const { return counts_; }
    const std::vector<double>& widths() const { return widths_; }
    // Half the diagonal of one cell.
    double radius() const { return radius_; }

    State center(std::size_t cell) const;
    std::vector<std::size_t> coordinates(std::size_t cell) const;
    std::size_t index(std::span<const std::size_t> coordinates) const;

    // Cell containing x (upper faces belong to the last cell); nullopt when x
    // lies outside the box.
    std::optional<std::size_t> locate(std::span<const double> x) const;

    // All cells whose center lies within `reach` of x, ascending.
    std::vector<std::size_t> cells_near(std::span<const double> x, double reach) const;

private:
    Box box_;
    std::vector<std::size_t> counts_;
    std::vector<double> widths_;
    std::size_t total_ = 1;
    double radius_ = 0.0;
};

Grid build_grid(const Box& box, const std::vector<std::size_t>& counts);

enum class ChainMode { free_switching, graph_constrained };

const char* to_string(ChainMode mode);
ChainMode parse_chain_mode(std::string_view text);

struct ChainParameters {
    double epsilon = 0.01;
    std::size_t m = 1;
    ChainMode mode = ChainMode::free_switching;
    // Offsets k*h/q for k = 0..q-1; q = 1 uses cell-aligned signals only.
    std::size_t offset_samples = 1;
    // Abort when nodes x timed words exceeds this.
    double max_work = 5e7;
    // 0 picks the hardware concurrency.
    std::size_t threads = 0;
};

struct ChainNode {
    std::size_t cell;
    Vertex vertex;

    friend bool operator==(const ChainNode&, const ChainNode&) = default;
    friend auto operator<=>(const ChainNode&, const ChainNode&) = default;
};

struct ChainGraph {
    ChainMode mode;
    ChainParameters parameters;
    std::size_t cell_count = 0;
    std::size_t vertex_count = 0;
    std::size_t word_count = 0;
    Adjacency edges;

    std::size_t node_count() const { return edges.node_count(); }
    // Free-switching nodes are cells; graph-constrained node = cell * n + vertex.
    ChainNode node(std::size_t id) const;
    bool has_edge(std::size_t from, std::size_t to) const;
};

// All admissible words of length m in g, lexicographic.
std::vector<Word> admissible_words(const DirectedGraph& g, std::size_t m);

// Endpoint of the flow of duration m*h from the center of `cell` under the
// aligned signal spelling `word`.
State step_image(const SwitchedSystem& sys, const DirectedGraph& g, const Grid& grid, std::size_t cell,
                 const Word& word);

// Images of the cell center and of sample points on the cell boundary under a
// timed word. `spread` is the largest distance from the center image to a
// sample image, which stands in for radius * expansion over the word.
struct CellImage {
    State center;
    double spread = 0.0;
};

CellImage cell_image(const SwitchedSystem& sys, const Grid& grid, std::size_t cell, const TimedWord& word);

ChainGraph build_chain_graph(const SwitchedSystem& sys, const DirectedGraph& g, const Grid& grid,
                             const ChainParameters& params);

struct ChainComponent {
    std::vector<std::size_t> nodes;
    std::vector<std::size_t> cells; // projection to the grid, ascending
    bool viable = false;
};

// Strongly connected components that are nontrivial or carry a self-edge,
// largest first (ties by smallest node).
std::vector<ChainComponent> chain_components(const ChainGraph& cg);

bool chain_equivalent(const Grid& grid, const std::vector<ChainComponent>& components,
                      std::span<const double> x, std::span<const double> y);

// Largest K inside E x V in which every node has a successor and a
// predecessor in K. (c, v) -> (c', v') when one h-step of field v from the
// center of c lands within landing_tolerance + spread + radius of the center
// of c' and v -> v' is an edge.
std::vector<ChainNode> lift_kernel(const SwitchedSystem& sys, const DirectedGraph& g, const Grid& grid,
                                   std::span<const std::size_t> cells, double landing_tolerance = 0.0);

double hausdorff_distance(const std::vector<State>& a, const std::vector<State>& b);
// One-dimensional point set against a closed interval.
double hausdorff_distance(std::span<const double> points, Interval interval);

std::vector<State> cell_centers(const Grid& grid, std::span<const std::size_t> cells);

// Maximal runs of consecutive indices in an ascending list.
std::vector<std::pair<std::size_t, std::size_t>> cell_runs(std::span<const std::size_t> cells);

} // namespace skewflow

#endif
