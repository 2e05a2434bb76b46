#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "skewflow/chain.hpp"
#include "skewflow/error.hpp"

using namespace skewflow;

namespace {

SwitchedSystem example2(double h = 0.1) {
    return SwitchedSystem({{0, 2}}, h, {polynomial_field({0, -2, 3, -1}), polynomial_field({0, 2, -1})});
}

std::set<std::vector<std::size_t>> cell_sets(const std::vector<ChainComponent>& comps) {
    std::set<std::vector<std::size_t>> out;
    for (const auto& c : comps) out.insert(c.cells);
    return out;
}

const ChainComponent* component_of(const std::vector<ChainComponent>& comps, std::size_t cell) {
    for (const auto& c : comps)
        if (std::binary_search(c.cells.begin(), c.cells.end(), cell)) return &c;
    return nullptr;
}

bool edges_subset(const ChainGraph& a, const ChainGraph& b) {
    for (std::size_t u = 0; u < a.node_count(); ++u)
        for (std::size_t v : a.edges.neighbors(u))
            if (!b.has_edge(u, v)) return false;
    return true;
}

} // namespace

TEST_CASE("grid geometry") {
    const auto grid = build_grid({{0, 2}}, {400});
    CHECK(grid.widths()[0] == doctest::Approx(0.005));
    CHECK(grid.radius() == doctest::Approx(0.0025));
    CHECK(grid.center(0)[0] == doctest::Approx(0.0025));
    CHECK(grid.locate(std::vector<double>{2.0}) == std::size_t{399});
    CHECK(grid.locate(std::vector<double>{0.0}) == std::size_t{0});
    CHECK_FALSE(grid.locate(std::vector<double>{2.1}).has_value());
    CHECK(grid.cells_near(std::vector<double>{1.0}, 0.006) == std::vector<std::size_t>{199, 200});
    CHECK(grid.cells_near(std::vector<double>{1.0}, 0.008) == std::vector<std::size_t>{198, 199, 200, 201});

    const auto square = build_grid({{0, 1}, {0, 1}}, {10, 10});
    CHECK(square.cell_count() == 100);
    CHECK(square.radius() == doctest::Approx(std::sqrt(0.02) / 2));
    for (std::size_t c = 0; c < square.cell_count(); ++c) {
        CHECK(square.index(square.coordinates(c)) == c);
        CHECK(square.locate(square.center(c)) == c);
    }
    CHECK(square.center(12)[0] == doctest::Approx(0.25));
    CHECK(square.center(12)[1] == doctest::Approx(0.15));

    CHECK_THROWS_AS(build_grid({{0, 0}}, {4}), ValidationError);
    CHECK_THROWS_AS(build_grid({{0, 1}}, {0}), ValidationError);
    CHECK_THROWS_AS(build_grid({{0, 1}}, {2, 2}), ValidationError);
}

TEST_CASE("step images") {
    const auto g = DirectedGraph::complete(2);
    const SwitchedSystem still_drift({{0.5, 1.5}}, 0.1, {expression_field({"0"}), expression_field({"1"})});
    const auto grid = build_grid(still_drift.box(), {1});
    CHECK(step_image(still_drift, g, grid, 0, {0})[0] == 1.0);
    CHECK(step_image(still_drift, g, grid, 0, {1})[0] == doctest::Approx(1.1).epsilon(1e-14));

    const SwitchedSystem back_and_forth({{0, 1}}, 0.1, {linear_field({{-1}}), linear_field({{1}})});
    const auto unit = build_grid(back_and_forth.box(), {1});
    CHECK(std::abs(step_image(back_and_forth, g, unit, 0, {0, 1})[0] - 0.5) <= 1e-7);
    CHECK_THROWS_AS(step_image(back_and_forth, DirectedGraph::cycle(2), unit, 0, {0, 0}), ValidationError);
    CHECK_THROWS_AS(step_image(back_and_forth, g, unit, 0, {}), ValidationError);
}

TEST_CASE("admissible word enumeration") {
    CHECK(admissible_words(DirectedGraph::complete(2), 3).size() == 8);
    CHECK(admissible_words(DirectedGraph::cycle(2), 2) == std::vector<Word>{{0, 1}, {1, 0}});
    CHECK(admissible_words(DirectedGraph::cycle(3), 4).size() == 3);
}

TEST_CASE("decay: each cell points at the cell holding its image") {
    const SwitchedSystem sys({{-1, 1}}, 0.1, {linear_field({{-1}})});
    const auto grid = build_grid(sys.box(), {200});
    ChainParameters p;
    p.epsilon = 0.01;
    const auto cg = build_chain_graph(sys, DirectedGraph::complete(1), grid, p);
    for (std::size_t c = 0; c < grid.cell_count(); ++c) {
        const double image = grid.center(c)[0] * std::exp(-0.1);
        CHECK(cg.has_edge(c, *grid.locate(std::vector<double>{image})));
    }
    // epsilon of one cell width: one multi-cell component, around the origin.
    // Further out, cells whose displacement stays within the inflated reach
    // keep a self-edge and survive as isolated singletons.
    p.epsilon = grid.widths()[0];
    const auto cg_eps = build_chain_graph(sys, DirectedGraph::complete(1), grid, p);
    const auto comps = chain_components(cg_eps);
    REQUIRE(!comps.empty());
    CHECK(comps[0].viable);
    const auto zero = *grid.locate(std::vector<double>{0.0});
    CHECK(std::binary_search(comps[0].cells.begin(), comps[0].cells.end(), zero));
    CHECK(cell_runs(comps[0].cells).size() == 1);
    for (std::size_t i = 1; i < comps.size(); ++i) {
        REQUIRE(comps[i].cells.size() == 1);
        const std::size_t c = comps[i].cells[0];
        CHECK(cg_eps.has_edge(c, c));
        const double x = grid.center(c)[0];
        const double reach = p.epsilon + grid.radius() * std::exp(-0.1) + grid.radius();
        CHECK(std::abs(x) * (1 - std::exp(-0.1)) <= reach + 1e-12);
        CHECK(std::abs(x) > grid.center(comps[0].cells.back())[0]);
    }
}

TEST_CASE("two-well field: separate components at both attractors") {
    const SwitchedSystem sys({{-1.5, 1.5}}, 0.1, {polynomial_field({0, 1, 0, -1})});
    const auto grid = build_grid(sys.box(), {300});
    ChainParameters p;
    p.epsilon = 0.005;
    const auto comps = chain_components(build_chain_graph(sys, DirectedGraph::complete(1), grid, p));
    const auto* minus = component_of(comps, *grid.locate(std::vector<double>{-1.0}));
    const auto* plus = component_of(comps, *grid.locate(std::vector<double>{1.0}));
    REQUIRE(minus);
    REQUIRE(plus);
    CHECK(minus != plus);
    // The repeller at the origin is chain recurrent too. Everything else is
    // a self-edge singleton from the inflated reach.
    std::size_t multi = 0;
    for (const auto& c : comps) multi += c.cells.size() > 1;
    CHECK(multi == 3);
    const auto* origin = component_of(comps, *grid.locate(std::vector<double>{0.0}));
    REQUIRE(origin);
    CHECK(origin != plus);
    CHECK(component_of(comps, *grid.locate(std::vector<double>{0.5})) == nullptr);
}

TEST_CASE("free switching over the complete graph is the union of single-field graphs") {
    const auto sys = example2();
    const auto grid = build_grid(sys.box(), {100});
    ChainParameters p;
    p.epsilon = 0.02;
    const auto both = build_chain_graph(sys, DirectedGraph::complete(2), grid, p);
    const SwitchedSystem only_a(sys.box(), 0.1, {polynomial_field({0, -2, 3, -1})});
    const SwitchedSystem only_b(sys.box(), 0.1, {polynomial_field({0, 2, -1})});
    const auto a = build_chain_graph(only_a, DirectedGraph::complete(1), grid, p);
    const auto b = build_chain_graph(only_b, DirectedGraph::complete(1), grid, p);
    for (std::size_t u = 0; u < grid.cell_count(); ++u) {
        std::vector<std::size_t> merged;
        const auto na = a.edges.neighbors(u), nb = b.edges.neighbors(u);
        std::set_union(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(merged));
        const auto n = both.edges.neighbors(u);
        CHECK(std::vector<std::size_t>(n.begin(), n.end()) == merged);
    }
}

TEST_CASE("graph-constrained edges on the 2-cycle follow the admissible words") {
    const SwitchedSystem sys({{0, 1}}, 0.1, {linear_field({{-1}}), linear_field({{1}})});
    const auto grid = build_grid(sys.box(), {50});
    ChainParameters p;
    p.epsilon = 0.01;
    p.m = 2;
    p.mode = ChainMode::graph_constrained;
    const auto g = DirectedGraph::cycle(2);
    const auto cg = build_chain_graph(sys, g, grid, p);
    CHECK(cg.node_count() == 100);
    for (std::size_t a = 0; a < grid.cell_count(); ++a) {
        const double image = step_image(sys, g, grid, a, {0, 1})[0];
        for (std::size_t target : cg.edges.neighbors(a * 2 + 0)) {
            const auto node = cg.node(target);
            CHECK(node.vertex == 0); // the word AB continues with A
            CHECK(std::abs(grid.center(node.cell)[0] - image) <= p.epsilon + 2 * grid.radius() + 1e-6);
        }
    }
}

TEST_CASE("example 2 chain structure") {
    const auto sys = example2();
    const auto grid = build_grid(sys.box(), {400});
    ChainParameters p;
    p.epsilon = 0.02;
    const auto comps = chain_components(build_chain_graph(sys, DirectedGraph::complete(2), grid, p));
    const auto* unit = component_of(comps, 0);
    REQUIRE(unit);
    for (std::size_t c = 0; c < 200; ++c) CHECK(std::binary_search(unit->cells.begin(), unit->cells.end(), c));
    const auto* top = component_of(comps, 399);
    REQUIRE(top);
    CHECK(top != unit);
    CHECK(chain_equivalent(grid, comps, std::vector<double>{0.2}, std::vector<double>{0.9}));
    CHECK_FALSE(chain_equivalent(grid, comps, std::vector<double>{0.5}, std::vector<double>{1.99}));
    for (const auto& c : comps) CHECK(cell_runs(c.cells).size() == 1);

    // The 2-cycle with two steps per link breaks [0, 1] apart.
    p.epsilon = 0.005;
    p.m = 2;
    const auto cyc = chain_components(build_chain_graph(sys, DirectedGraph::cycle(2), grid, p));
    CHECK_FALSE(chain_equivalent(grid, cyc, std::vector<double>{0.5}, std::vector<double>{0.9}));
    for (const auto& c : cyc) CHECK(cell_runs(c.cells).size() == 1);
}

TEST_CASE("components are disjoint and maximal") {
    const auto sys = example2();
    const auto grid = build_grid(sys.box(), {200});
    ChainParameters p;
    p.epsilon = 0.01;
    p.mode = ChainMode::graph_constrained;
    const auto cg = build_chain_graph(sys, DirectedGraph::complete(2), grid, p);
    const auto comps = chain_components(cg);
    std::set<std::size_t> seen;
    for (const auto& c : comps) {
        for (std::size_t v : c.nodes) CHECK(seen.insert(v).second);
        CHECK(c.viable);
    }
    for (std::size_t i = 1; i < comps.size(); ++i) CHECK(comps[i - 1].nodes.size() >= comps[i].nodes.size());
}

TEST_CASE("property: edges grow with epsilon and with offset samples") {
    const auto sys = example2();
    const auto grid = build_grid(sys.box(), {120});
    const auto g = DirectedGraph::complete(2);
    ChainParameters p;
    std::optional<ChainGraph> previous;
    for (double eps : {0.001, 0.004, 0.01, 0.03, 0.1}) {
        p.epsilon = eps;
        auto cg = build_chain_graph(sys, g, grid, p);
        if (previous) CHECK(edges_subset(*previous, cg));
        previous = std::move(cg);
    }
    p.epsilon = 0.01;
    const auto aligned = build_chain_graph(sys, g, grid, p);
    p.offset_samples = 4;
    const auto offsets = build_chain_graph(sys, g, grid, p);
    CHECK(edges_subset(aligned, offsets));
    CHECK(offsets.word_count == 2 + 3 * 4);
}

TEST_CASE("free-switching and graph-constrained modes agree for the complete graph") {
    const auto sys = example2();
    const auto grid = build_grid(sys.box(), {200});
    const auto g = DirectedGraph::complete(2);
    for (double eps : {0.005, 0.02}) {
        ChainParameters p;
        p.epsilon = eps;
        const auto free = chain_components(build_chain_graph(sys, g, grid, p));
        p.mode = ChainMode::graph_constrained;
        const auto constrained = chain_components(build_chain_graph(sys, g, grid, p));
        CHECK(cell_sets(free) == cell_sets(constrained));
    }
}

TEST_CASE("thread count does not change the result") {
    const auto sys = example2();
    const auto grid = build_grid(sys.box(), {150});
    ChainParameters p;
    p.epsilon = 0.01;
    p.threads = 1;
    const auto one = build_chain_graph(sys, DirectedGraph::complete(2), grid, p);
    p.threads = 4;
    const auto four = build_chain_graph(sys, DirectedGraph::complete(2), grid, p);
    CHECK(one.edges.offsets == four.edges.offsets);
    CHECK(one.edges.targets == four.edges.targets);
}

TEST_CASE("resource guard") {
    const auto sys = example2();
    const auto grid = build_grid(sys.box(), {400});
    ChainParameters p;
    p.m = 10;
    p.max_work = 1e5;
    try {
        build_chain_graph(sys, DirectedGraph::complete(2), grid, p);
        FAIL("expected the guard to trip");
    } catch (const ResourceLimitError& e) {
        CHECK(std::string(e.what()).find("coarser grid") != std::string::npos);
    }
}

TEST_CASE("lift kernels") {
    const auto sys = example2();
    const auto grid = build_grid(sys.box(), {200});
    const auto g = DirectedGraph::complete(2);

    std::vector<std::size_t> all(grid.cell_count());
    for (std::size_t c = 0; c < all.size(); ++c) all[c] = c;
    CHECK(lift_kernel(sys, g, grid, all).size() == all.size() * 2);

    // [0, 1] is invariant for A only; B pushes the top cells out.
    std::vector<std::size_t> unit(all.begin(), all.begin() + 100);
    const auto kernel = lift_kernel(sys, g, grid, unit);
    CHECK(kernel.size() < unit.size() * 2);
    for (const auto& node : kernel) {
        const auto img = cell_image(sys, grid, node.cell, aligned_word({node.vertex}, 0.1));
        CHECK(img.center[0] <= 1.0 + img.spread + grid.radius());
    }
    for (std::size_t c : unit) CHECK(std::binary_search(kernel.begin(), kernel.end(), ChainNode{c, 0}));
    CHECK_FALSE(std::binary_search(kernel.begin(), kernel.end(), ChainNode{99, 1}));

    // A fixed point shared by every field.
    const SwitchedSystem repel({{-1, 1}}, 0.1, {linear_field({{1}}), linear_field({{2}})});
    const auto odd = build_grid(repel.box(), {101});
    const std::vector<std::size_t> middle{50};
    CHECK(lift_kernel(repel, g, odd, middle) == std::vector<ChainNode>{{50, 0}, {50, 1}});
}

TEST_CASE("Hausdorff distances") {
    const std::vector<State> a{{0.0}, {1.0}};
    CHECK(hausdorff_distance(a, a) == 0.0);
    CHECK(hausdorff_distance(std::vector<State>{{0.0}}, std::vector<State>{{1.0}}) == 1.0);
    const std::vector<double> p{0.0};
    CHECK(hausdorff_distance(p, Interval{1.0, 1.0}) == 1.0);
    CHECK(hausdorff_distance(std::vector<double>{0.0, 1.0}, Interval{0.0, 1.0}) == 0.5);
    CHECK(hausdorff_distance(std::vector<double>{0.5}, Interval{0.0, 1.0}) == 0.5);

    const auto grid = build_grid({{0, 2}}, {400});
    std::vector<double> centers;
    for (std::size_t c = 0; c < 200; ++c) centers.push_back(grid.center(c)[0]);
    CHECK(hausdorff_distance(centers, Interval{0.0, 1.0}) <= 0.0025 + 1e-12);
    CHECK_THROWS_AS(hausdorff_distance(std::vector<double>{}, Interval{0, 1}), ValidationError);
}

TEST_CASE("cell runs") {
    const std::vector<std::size_t> cells{1, 2, 3, 7, 9, 10};
    CHECK(cell_runs(cells) == std::vector<std::pair<std::size_t, std::size_t>>{{1, 3}, {7, 7}, {9, 10}});
}
