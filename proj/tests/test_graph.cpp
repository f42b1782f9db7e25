#include "doctest.h"
#include "gonlab/error.hpp"
#include "gonlab/graph.hpp"
#include "support.hpp"

using namespace gonlab;

namespace {

bool has_violation(const MetricGraph& g, const std::string& kind)
{
    auto diag = validate(g);
    return std::any_of(diag.violations.begin(), diag.violations.end(),
                       [&](const Violation& v) { return v.kind == kind; });
}

} // namespace

TEST_SUITE("graph-core") {

TEST_CASE("rationals parse and print in lowest terms")
{
    CHECK(parse_rational("3/2") == Rational(3, 2));
    CHECK(parse_rational("-4") == Rational(-4));
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(to_string(Rational(6, 4)) == "3/2");
    CHECK(to_string(Rational(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational(" 1"), ParseError);
    CHECK(lcm_of(4, 6) == 12);
    CHECK(is_integer(Rational(4, 2)));
    CHECK_FALSE(is_integer(Rational(1, 2)));
}

TEST_CASE("lengths include infinity")
{
    CHECK(parse_length("inf").is_infinite());
    CHECK(parse_length("infinity").is_infinite());
    CHECK(parse_length("7/3") == Length(Rational(7, 3)));
    CHECK(to_string(Length::infinity()) == "inf");
    CHECK_FALSE(Length::infinity() == Length(1));
    CHECK_THROWS(Length::infinity().value());
}

TEST_CASE("graph construction rejects duplicates and unknown vertices")
{
    MetricGraph g;
    g.add_vertex("a");
    CHECK_THROWS_AS(g.add_vertex("a"), InvalidGraph);
    g.add_vertex("b");
    g.add_edge("e", "a", "b");
    CHECK_THROWS_AS(g.add_edge("e", "a", "b"), InvalidGraph);
    CHECK_THROWS_AS(g.add_edge("f", "a", "zzz"), InvalidGraph);
    g.add_edge("f", "b", "a", Length(Rational(1, 3)));  // parallel edge
    CHECK(g.valence(g.vertex("a")) == 2);
    CHECK(genus(g) == 1);
}

TEST_CASE("validation diagnostics")
{
    MetricGraph empty;
    CHECK(has_violation(empty, "empty"));

    MetricGraph loop;
    loop.add_vertex("a");
    loop.add_edge("l", "a", "a");
    CHECK(has_violation(loop, "loop"));

    MetricGraph zero;
    zero.add_vertex("a");
    zero.add_vertex("b");
    zero.add_edge("e", "a", "b", Length(0));
    CHECK(has_violation(zero, "nonpositive length"));

    MetricGraph split;
    split.add_vertex("a");
    split.add_vertex("b");
    CHECK(has_violation(split, "disconnected"));
    CHECK_THROWS_AS(require_valid(split), InvalidGraph);

    MetricGraph inner_infinite = testing::path_graph(3);
    inner_infinite.add_edge("x", "v1", "v3", Length::infinity());
    CHECK(has_violation(inner_infinite, "infinite edge"));

    MetricGraph leg = testing::path_graph(2);
    leg.add_vertex("end");
    leg.add_edge("leg", "v2", "end", Length::infinity());
    CHECK(validate(leg).ok());
    CHECK_THROWS_AS(require_finite(leg), InvalidGraph);
    CHECK(genus(leg) == 0);
}

TEST_CASE("genus of standard graphs")
{
    for (int d = 2; d <= 8; ++d)
        CHECK(genus(testing::complete_graph(d)) == (d - 1) * (d - 2) / 2);
    CHECK(genus(testing::cycle_graph(5)) == 1);
    CHECK(genus(testing::path_graph(5)) == 0);
}

TEST_CASE("points and tangent directions")
{
    auto g = testing::complete_graph(4);
    CHECK(to_string(PointRef::vertex("v1")) == "v1");
    CHECK(to_string(PointRef::interior("v1-v2", Rational(1, 2))) == "v1-v2@1/2");
    CHECK_THROWS_AS(check_point(g, PointRef::interior("v1-v2", Rational(1))), InvalidGraph);
    CHECK_THROWS_AS(check_point(g, PointRef::interior("v1-v2", Rational(0))), InvalidGraph);
    CHECK_THROWS_AS(check_point(g, PointRef::vertex("nope")), InvalidGraph);
    CHECK(tangent_directions(g, PointRef::vertex("v1")).size() == 3);
    CHECK(tangent_directions(g, PointRef::interior("v1-v2", Rational(1, 3))).size() == 2);
    CHECK(valence(g, PointRef::interior("v1-v2", Rational(1, 3))) == 2);
    CHECK(PointRef::vertex("a") < PointRef::interior("a", Rational(1, 2)));
}

TEST_CASE("subdivision and integerization")
{
    MetricGraph g;
    g.add_vertex("a");
    g.add_vertex("b");
    g.add_edge("e", "a", "b", Length(Rational(3, 2)));
    g.add_edge("f", "a", "b", Length(Rational(1, 3)));
    auto sub = subdivide(g, 3);
    CHECK(sub.graph.vertex_count() == 2 + 2 * 2);
    CHECK(sub.graph.edge_count() == 6);
    CHECK(sub.graph.edge("e#2").length == Length(Rational(1, 2)));
    CHECK(sub.lattice.at(PointRef::interior("e", Rational(1, 2))) == "e@1");
    CHECK(genus(sub.graph) == genus(g));
    CHECK(subdivide(g, 1).graph == g);
    CHECK_THROWS_AS(subdivide(g, 0), InvalidGraph);

    auto whole = integerize(g);
    CHECK(whole.scale == Rational(6));
    CHECK(whole.graph.edge("e").length == Length(9));
    CHECK(whole.graph.edge("f").length == Length(2));
}

}
