#include <random>

#include "doctest.h"
#include "gonlab/error.hpp"
#include "gonlab/families.hpp"
#include "gonlab/reduction.hpp"
#include "gonlab/sampling.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace gonlab;

namespace {

PointRef V(const std::string& id) { return PointRef::vertex(id); }

MetricGraph unit_copy(const MetricGraph& g)
{
    MetricGraph unit;
    for (const auto& v : g.vertex_ids())
        unit.add_vertex(v);
    for (const auto& e : g.edges())
        unit.add_edge(e.id, g.vertex_id(e.first), g.vertex_id(e.second));
    return unit;
}

} // namespace

TEST_SUITE("reduction") {

TEST_CASE("burning on the triangle")
{
    auto k3 = testing::complete_graph(3);
    auto full = burn(k3, Divisor{{V("v1"), 2}}, V("v1"));
    CHECK(full.fully_burnt());
    CHECK(full.nonsaturated_witness.has_value());
    CHECK(oracle::unburnt(k3, Divisor{{V("v1"), 2}}, "v1").empty());

    Divisor two{{V("v2"), 1}, {V("v3"), 1}};
    auto blocked = burn(k3, two, V("v1"));
    CHECK(blocked.unburnt == std::vector<PointRef>{V("v2"), V("v3")});
    CHECK(blocked.saturated_boundary == std::vector<PointRef>{V("v2"), V("v3")});
    CHECK(oracle::unburnt(k3, two, "v1") == std::vector<std::string>{"v2", "v3"});

    // the unburnt set includes the edge v2-v3 once the level is refined
    auto fine = burn(k3, two, V("v1"), 2);
    CHECK(std::count(fine.unburnt.begin(), fine.unburnt.end(), PointRef::interior("v2-v3", Rational(1, 2))) == 1);
    CHECK(fine.unburnt.size() == 3);
}

TEST_CASE("saturated cycle does not burn")
{
    auto c = testing::cycle_graph(5);
    Divisor d;
    for (int i = 2; i <= 5; ++i)
        d.add(V("v" + std::to_string(i)), 2);
    CHECK_FALSE(burn(c, d, V("v1")).fully_burnt());
    CHECK_FALSE(is_reduced(c, d, V("v1")));
}

TEST_CASE("reducedness test")
{
    auto k3 = testing::complete_graph(3);
    CHECK(is_reduced(k3, Divisor{{V("v1"), 2}}, V("v1")));
    CHECK_FALSE(is_reduced(k3, Divisor{{V("v2"), 1}, {V("v3"), 1}}, V("v1")));
    CHECK_FALSE(is_reduced(k3, Divisor{{V("v2"), -1}, {V("v1"), 3}}, V("v1")));
    CHECK(is_reduced(k3, Divisor{{V("v1"), -3}}, V("v1")));
    CHECK_THROWS_AS(burn(k3, Divisor{{V("v2"), -1}}, V("v1")), InvalidDivisor);
}

TEST_CASE("reduction examples")
{
    auto k3 = testing::complete_graph(3);
    Divisor two{{V("v2"), 1}, {V("v3"), 1}};
    auto r = reduce(k3, two, V("v1"));
    CHECK(r == Divisor{{V("v1"), 2}});
    // oracle: firing {v2, v3} for time 1 moves both chips onto v1
    auto f = chip_firing_function(k3, ClosedSet{{"v2", "v3"}, {"v2-v3"}}, Rational(1));
    CHECK(two + principal_divisor(k3, f) == r);
    CHECK(oracle::q_reduced(k3, r, "v1"));
    CHECK(reduce(k3, r, V("v1")) == r);

    auto b = families::sharp_example_b();
    auto five = reduce(b, Divisor{{V("vbar"), 5}}, V("v"));
    CHECK(five == Divisor{{V("v"), 5}});
    CHECK(oracle::q_reduced(b, five, "v"));
    CHECK(oracle::equivalent(b, five, Divisor{{V("vbar"), 5}}));
}

TEST_CASE("reduction at an interior base point")
{
    auto c = testing::cycle_graph(4);
    auto q = PointRef::interior("e1", Rational(1, 2));
    Divisor d = Divisor::of_vertices({"v3", "v3"});
    auto r = reduce(c, d, q);
    CHECK(r.degree() == 2);
    CHECK(is_reduced(c, r, q));
    CHECK(linearly_equivalent(c, r, d));
    CHECK(r[q] >= 1);  // genus one: at most one chip can stay away from q
}

TEST_CASE("reduction properties on random graphs")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 120; ++trial) {
        auto g = sampling::random_graph(rng, std::uniform_int_distribution<int>(2, 7)(rng),
                                        std::uniform_int_distribution<int>(0, 4)(rng));
        auto d = sampling::random_divisor(rng, g, 5, -2, 3);
        auto q = V("v" + std::to_string(std::uniform_int_distribution<int>(1, int(g.vertex_count()))(rng)));
        auto r = reduce(g, d, q);
        CAPTURE(to_string(d));
        CHECK(is_reduced(g, r, q));
        CHECK(reduce(g, r, q) == r);
        CHECK(linearly_equivalent(g, d, r));
        CHECK(reduce(g, d + sampling::random_principal(rng, g, 2), q) == r);
        int s = minimal_subdivision(g, d);
        CHECK(reduce(g, d, q, 2 * s) == reduce(g, d, q, s));

        // D(q) of the reduced form dominates every representative effective away from q
        for (int k = 0; k < 5; ++k) {
            auto e = d + sampling::random_principal(rng, g, 1 + k);
            if (e.is_effective_away_from(q))
                CHECK(r[q] >= e[q]);
        }
    }
}

TEST_CASE("reduction agrees with the textbook oracle on unit graphs")
{
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 120; ++trial) {
        auto g = unit_copy(sampling::random_graph(rng, std::uniform_int_distribution<int>(2, 7)(rng), 3));
        auto d = sampling::random_divisor(rng, g, 6, -2, 3, false);
        auto r = reduce(g, d, V("v1"));
        CHECK(oracle::q_reduced(g, r, "v1"));
        CHECK(oracle::equivalent(g, r, d));
        CHECK(is_reduced(g, d, V("v1")) == oracle::q_reduced(g, d, "v1"));
    }
}

}
