#include <doctest.h>

#include <set>

#include "skewflow/error.hpp"
#include "skewflow/graph.hpp"
#include "skewflow/sequence.hpp"
#include "support.hpp"

using namespace skewflow;

TEST_CASE("construction rejects malformed graphs") {
    CHECK_THROWS_AS(DirectedGraph(0, {}), ValidationError);
    CHECK_THROWS_AS(DirectedGraph(2, {{0, 2}}), ValidationError);
    CHECK_THROWS_AS(DirectedGraph(2, {{0, 1}, {0, 1}}), ValidationError);
    CHECK_THROWS_AS(DirectedGraph(2, {{0, 1}}, {"A"}), ValidationError);
    CHECK_THROWS_AS(DirectedGraph(2, {{0, 1}}, {"A", "A"}), ValidationError);
    CHECK_THROWS_AS(DirectedGraph(2, {{0, 1}}, {"A", "B C"}), ValidationError);
}

TEST_CASE("complete and cycle graphs") {
    const auto k3 = DirectedGraph::complete(3);
    CHECK(k3.edge_count() == 9);
    CHECK(k3.is_complete());
    CHECK(k3.label(2) == "C");
    const auto c2 = DirectedGraph::cycle(2);
    CHECK(c2.has_edge(0, 1));
    CHECK(c2.has_edge(1, 0));
    CHECK_FALSE(c2.has_edge(0, 0));
    CHECK(c2.is_admissible(Word{0, 1, 0, 1}));
    CHECK_FALSE(c2.is_admissible(Word{0, 0}));
    CHECK(c2.format_word(Word{0, 1}) == "AB");
    CHECK(c2.find_label("B") == Vertex{1});
    CHECK_FALSE(c2.find_label("Z").has_value());
}

TEST_CASE("N-graph validation names offending vertices") {
    const DirectedGraph g(3, {{0, 1}, {1, 0}, {1, 2}});
    const auto report = validate_n_graph(g);
    CHECK_FALSE(report.ok());
    CHECK(report.missing_successor == Word{2});
    CHECK(report.missing_predecessor.empty());
    CHECK(report.offending() == Word{2});
    CHECK(report.describe(g).find("C") != std::string::npos);
    CHECK_THROWS_AS(require_valid(g), ValidationError);
    CHECK_THROWS_AS(scc(g), ValidationError);
    CHECK(validate_n_graph(DirectedGraph::complete(2)).ok());
}

TEST_CASE("two-component graph: {A} precedes {B}") {
    const DirectedGraph g(2, {{0, 0}, {0, 1}, {1, 1}});
    const auto dec = scc(g);
    REQUIRE(dec.size() == 2);
    CHECK(dec.components[0] == Word{0});
    CHECK(dec.components[1] == Word{1});
    CHECK(dec.condensation_edges == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
    const auto order = morse_order(dec);
    CHECK(order.precedes(0, 1));
    CHECK_FALSE(order.precedes(1, 0));
    CHECK(order.is_partial_order());
}

TEST_CASE("paths and walks") {
    const DirectedGraph g(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 0}});
    CHECK(admissible_path(g, 0, 2) == Word{0, 1, 2});
    CHECK(admissible_path(g, 1, 1) == Word{1});
    CHECK(connecting_walk(g, 1, 1) == Word{1, 2, 0, 1});
    CHECK(connecting_walk(g, 0, 0) == Word{0, 3, 0});
    const DirectedGraph line(2, {{0, 0}, {0, 1}, {1, 1}});
    CHECK_FALSE(admissible_path(line, 1, 0).has_value());
}

TEST_CASE("Tarjan on a raw adjacency") {
    Adjacency adj;
    // 0 -> 1 -> 2 -> 0, 2 -> 3
    for (const auto& out : std::vector<std::vector<std::size_t>>{{1}, {2}, {0, 3}, {}}) {
        adj.targets.insert(adj.targets.end(), out.begin(), out.end());
        adj.offsets.push_back(adj.targets.size());
    }
    std::size_t count = 0;
    const auto comp = tarjan_components(adj, count);
    CHECK(count == 2);
    CHECK(comp[0] == comp[1]);
    CHECK(comp[1] == comp[2]);
    CHECK(comp[3] != comp[0]);
    // Completion order: the sink {3} finishes first.
    CHECK(comp[3] < comp[0]);
}

TEST_CASE("property: SCCs agree with brute-force mutual reachability") {
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 9;
        const auto g = random_valid_graph(rng, n, 0.25);
        const auto reach = testing::reachability(g);
        const auto dec = scc(g);

        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = 0; v < n; ++v) {
                const bool same = u == v || (reach[u][v] && reach[v][u]);
                CHECK((dec.component_of[u] == dec.component_of[v]) == same);
            }
        for (std::size_t c = 0; c < dec.size(); ++c) {
            const Vertex v = dec.components[c].front();
            CHECK(dec.cyclic[c] == reach[v][v]);
        }

        // Condensation is acyclic and the Morse order is reachability.
        const auto order = morse_order(dec);
        CHECK(order.is_partial_order());
        for (const auto& [a, b] : dec.condensation_edges) CHECK_FALSE(order.precedes(b, a));
        for (std::size_t a = 0; a < dec.size(); ++a)
            for (std::size_t b = 0; b < dec.size(); ++b) {
                const Vertex u = dec.components[a].front(), v = dec.components[b].front();
                CHECK(order.precedes(a, b) == (a == b || reach[u][v]));
            }
    }
}

TEST_CASE("property: admissible words counted by adjacency matrix powers") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 5;
        const auto g = random_valid_graph(rng, n, 0.4);
        const auto dec = scc(g);
        for (const auto& comp : dec.components) {
            // Restricted adjacency matrix; words of length L = sum of entries of A^(L-1).
            const std::size_t k = comp.size();
            std::vector<std::vector<long>> a(k, std::vector<long>(k, 0));
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) a[i][j] = g.has_edge(comp[i], comp[j]);
            std::vector<std::vector<long>> power(k, std::vector<long>(k, 0));
            for (std::size_t i = 0; i < k; ++i) power[i][i] = 1;
            for (std::size_t len = 1; len <= 5; ++len) {
                long expected = 0;
                for (const auto& row : power)
                    for (long x : row) expected += x;
                const auto words = enumerate_admissible_words(g, comp, len);
                CHECK(static_cast<long>(words.size()) == expected);
                std::set<Word> unique(words.begin(), words.end());
                CHECK(unique.size() == words.size());
                for (const auto& w : words) CHECK(g.is_admissible(w));
                auto next = power;
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) {
                        next[i][j] = 0;
                        for (std::size_t m = 0; m < k; ++m) next[i][j] += power[i][m] * a[m][j];
                    }
                power = next;
            }
        }
    }
}
