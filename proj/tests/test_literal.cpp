#include <doctest.h>

#include "skewflow/error.hpp"
#include "skewflow/literal.hpp"
#include "support.hpp"

using namespace skewflow;

TEST_CASE("sequence literals") {
    const auto g = DirectedGraph::complete(2);
    const auto x = parse_sequence_literal("left=(A) core=[BBA] right=(AB) shift=-1", g);
    CHECK(x.left_period() == Word{0});
    CHECK(x.core() == Word{1, 1, 0});
    CHECK(x.right_period() == Word{0, 1});
    CHECK(x.index_shift() == -1);
    const auto y = parse_sequence_literal("right=(A, B)", g);
    CHECK(y.left_period() == Word{0, 1});
    CHECK(y.core().empty());
    CHECK(parse_sequence_literal("right=(0 1)", g).right_period() == Word{0, 1});
}

TEST_CASE("signal literals") {
    const auto g = DirectedGraph::complete(2);
    const auto f = parse_signal_literal("right=(AB) tau=0.05 h=0.1", g);
    CHECK(f.step() == 0.1);
    CHECK(f.offset() == doctest::Approx(0.05));
    const auto k = parse_signal_literal("right=(B)", g, 0.1);
    CHECK(k.step() == 0.1);
    CHECK(is_signal_literal("right=(B) h=1"));
    CHECK_FALSE(is_signal_literal("right=(B)"));
    CHECK_THROWS_AS(parse_signal_literal("right=(B)", g), ParseError);
    CHECK_THROWS_AS(parse_signal_literal("right=(B) h=0.2", g, 0.1), ValidationError);
}

TEST_CASE("parse errors carry positions") {
    const auto g = DirectedGraph::complete(2);
    try {
        parse_sequence_literal("right=(AZ)", g);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 8);
    }
    try {
        parse_sequence_literal("right=(A) shift=x", g);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 16);
    }
    CHECK_THROWS_AS(parse_sequence_literal("right=(A", g), ParseError);
    CHECK_THROWS_AS(parse_sequence_literal("core=[A]", g), ParseError);
    CHECK_THROWS_AS(parse_sequence_literal("right=(A) color=red", g), ParseError);
    CHECK_THROWS_AS(parse_sequence_literal("right=(A) right=(B)", g), ParseError);
    CHECK_THROWS_AS(parse_sequence_literal("right=()", g), ParseError);
    CHECK_THROWS_AS(parse_sequence_literal("right=(AA)", DirectedGraph::cycle(2)), ValidationError);
}

TEST_CASE("property: format and parse round trip") {
    testing::Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = random_valid_graph(rng, 1 + rng() % 5, 0.4);
        const auto x = random_sequence(rng, g);
        const auto back = parse_sequence_literal(format_sequence(x, g), g);
        CHECK(same_values(x, back));
        std::uniform_real_distribution<double> tau(0.0, 0.3);
        const SwitchingSignal f(x, 0.3, tau(rng));
        const auto f2 = parse_signal_literal(format_signal(f, g), g);
        CHECK(f2.offset() == f.offset());
        CHECK(metric_delta(f, f2, 1e-12) == 0.0);
    }
}

TEST_CASE("multi-character labels are space separated") {
    const DirectedGraph g(2, {{0, 1}, {1, 0}}, {"up", "down"});
    const auto x = parse_sequence_literal("right=(up down)", g);
    CHECK(format_sequence(x, g) == "left=(up down) core=[] right=(up down) shift=0");
}

TEST_CASE("reals print in shortest round-trip form") {
    CHECK(format_real(0.1) == "0.1");
    CHECK(format_real(2.0) == "2");
}
