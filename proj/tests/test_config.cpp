#include <doctest.h>

#include "skewflow/config.hpp"
#include <fstream>

#include "skewflow/error.hpp"

using namespace skewflow;
using nlohmann::json;

namespace {
const std::filesystem::path configs(SKEWFLOW_CONFIG_DIR);
}

TEST_CASE("shipped configs load") {
    for (const char* name : {"example2_complete.json", "example2_cycle.json", "example1_reduced.json",
                             "morse_example.json", "edge_list.json", "blow_up.json", "invalid_graph.json"}) {
        CAPTURE(name);
        CHECK_NOTHROW(load_config(configs / name));
    }
    const auto cfg = load_config(configs / "example2_complete.json");
    CHECK(cfg.graph.is_complete());
    REQUIRE(cfg.system);
    CHECK(cfg.system->step() == 0.1);
    CHECK(cfg.grid == std::vector<std::size_t>{400});
    CHECK(cfg.chain.epsilon == 0.02);
    CHECK(cfg.references.size() == 2);
    CHECK(cfg.references[1].interval.lo == 2.0);
    CHECK(cfg.resolved["system"]["substeps"] == 20);
    CHECK(cfg.resolved["analysis"]["q"] == 1);
}

TEST_CASE("graph blocks") {
    auto graph = [](json block) { return parse_config({{"graph", block}}).graph; };
    CHECK(graph({{"cycle", 3}}).edge_count() == 3);
    const auto g = graph({{"vertices", {"up", "down"}}, {"edges", {{"up", "down"}, {"down", "up"}, {1, 1}}}});
    CHECK(g.label(0) == "up");
    CHECK(g.has_edge(1, 1));
    CHECK(graph({{"vertices", 2}, {"edges", {{0, 1}, {1, 0}}}}).label(1) == "B");
    CHECK_THROWS_AS(graph({{"vertices", 2}, {"edges", {{0, 2}}}}), ValidationError);
    CHECK_THROWS_AS(graph({{"vertices", {"A"}}, {"edges", {{"A", "Q"}}}}), ValidationError);
    CHECK_THROWS_AS(graph({{"wires", 2}}), ValidationError);
}

TEST_CASE("edge list text") {
    const auto g = parse_edge_list("# comment\nx y\ny x # trailing\n\ny y\n");
    CHECK(g.vertex_count() == 2);
    CHECK(g.labels() == std::vector<std::string>{"x", "y"});
    CHECK(g.has_edge(1, 1));
    const auto numeric = parse_edge_list("0 1\n1 0\n", 3);
    CHECK(numeric.vertex_count() == 3);
    CHECK_THROWS_AS(parse_edge_list("0 1 2\n"), ValidationError);
    CHECK_THROWS_AS(parse_edge_list("0 5\n", 3), ValidationError);
}

TEST_CASE("cross-reference and value checks") {
    const json base = {{"graph", {{"complete", 2}}},
                       {"system", {{"box", {0, 1}}, {"h", 0.1}, {"fields", {"x", "-x"}}}}};
    CHECK_NOTHROW(parse_config(base));

    auto broken = base;
    broken["system"]["fields"] = {"x"};
    CHECK_THROWS_AS(parse_config(broken), ValidationError);

    broken = base;
    broken["system"]["h"] = -1;
    CHECK_THROWS_AS(parse_config(broken), ValidationError);

    broken = base;
    broken["system"]["fields"] = {"x +", "x"};
    CHECK_THROWS_AS(parse_config(broken), ParseError);

    broken = base;
    broken["run"] = {{"tolerance", 0}};
    CHECK_THROWS_AS(parse_config(broken), ValidationError);

    broken = base;
    broken["analysis"] = {{"epsilon", -0.1}};
    CHECK_THROWS_AS(parse_config(broken), ValidationError);

    broken = base;
    broken["analysis"] = {{"mode", "sideways"}};
    CHECK_THROWS_AS(parse_config(broken), ValidationError);

    broken = base;
    broken["analysis"] = {{"grid", {10, 10}}};
    CHECK_THROWS_AS(parse_config(broken), ValidationError);

    auto planar = base;
    planar["system"] = {{"box", {{0, 1}, {0, 1}}},
                        {"h", 0.1},
                        {"fields", {{"x2", "-x1"}, {{"linear", {{0, 1}, {-1, 0}}}}}}};
    planar["analysis"] = {{"grid", 8}};
    const auto cfg = parse_config(planar);
    CHECK(cfg.system->dimension() == 2);
    CHECK(cfg.grid == std::vector<std::size_t>{8, 8});
}

TEST_CASE("malformed JSON reports a position") {
    const auto path = std::filesystem::temp_directory_path() / "skewflow_bad_config.json";
    {
        std::ofstream out(path);
        out << "{\"graph\": {\"complete\": 2},}";
    }
    CHECK_THROWS_AS(load_config(path), ParseError);
    std::filesystem::remove(path);
}
