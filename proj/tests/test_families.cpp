#include <random>

#include "doctest.h"
#include "gonlab/error.hpp"
#include "gonlab/families.hpp"
#include "gonlab/rank.hpp"
#include "support.hpp"

using namespace gonlab;
using namespace gonlab::families;

namespace {

FamilySpec spec_of(Variant v)
{
    FamilySpec s;
    s.variant = std::move(v);
    return s;
}

int valence_of(const MetricGraph& g, const std::string& v) { return int(g.valence(g.vertex(v))); }

} // namespace

TEST_SUITE("families") {

TEST_CASE("complete and clique-removed graphs have the expected edge counts")
{
    CHECK(build(spec_of(CompleteK{4})).edge_count() == 6);
    auto k8 = build(spec_of(KdMinusKh{8, 4}));
    CHECK(k8.edge_count() == 22);
    CHECK(k8.vertex_count() == 8);
    CHECK_FALSE(k8.find_edge("v1-v2"));
    CHECK(k8.find_edge("v4-v5"));
}

TEST_CASE("max clique in removed edges")
{
    using P = std::pair<std::string, std::string>;
    CHECK(max_clique_in_removed(std::vector<P>{{"v1", "v2"}}) == 2);
    CHECK(max_clique_in_removed(std::vector<P>{{"v1", "v2"}, {"v1", "v3"}, {"v2", "v3"}}) == 3);
    CHECK(max_clique_in_removed(std::vector<P>{{"v1", "v2"}, {"v3", "v4"}, {"v5", "v6"}}) == 2);
    CHECK(max_clique_in_removed(std::vector<P>{}) == 0);
}

TEST_CASE("max clique agrees with subset enumeration on random removals")
{
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 200; ++trial) {
        int d = std::uniform_int_distribution<int>(3, 9)(rng);
        int count = std::uniform_int_distribution<int>(1, d * (d - 1) / 2)(rng);
        auto removed = sampling::random_removal(rng, d, count);
        CHECK(max_clique_in_removed(removed) == testing::brute_force_clique(d, removed));
        auto clique = maximum_removed_clique(removed);
        for (std::size_t i = 0; i < clique.size(); ++i)
            for (std::size_t j = i + 1; j < clique.size(); ++j)
                CHECK(std::binary_search(removed.begin(), removed.end(), std::pair{clique[i], clique[j]}));
    }
}

TEST_CASE("closed-form predictions")
{
    CHECK(predicted_gonality(spec_of(CompleteK{5})) == 4);
    CHECK(predicted_gonality(spec_of(KdMinusKh{8, 4})) == 4);
    CHECK(predicted_gonality(spec_of(Bipartite{3, 4})) == 3);
    CHECK(predicted_gonality(spec_of(Sharp{8, 3})) == 5);
    CHECK(predicted_gonality(spec_of(TwoCliquesRemoved{7, {1, 2, 3}, {4, 5}})) == 4);
    CHECK(predicted_gonality(spec_of(KdMinusEdges{6, {{1, 2}, {2, 3}, {1, 3}}})) == 3);
}

TEST_CASE("explicit witnesses")
{
    CHECK(witness_divisor(spec_of(KdMinusKh{8, 4})) == Divisor::of_vertices({"v5", "v6", "v7", "v8"}));
    CHECK(witness_divisor(spec_of(CompleteK{5})) == Divisor::of_vertices({"v1", "v2", "v3", "v4"}));
    // Sharp(8,3): k2 = 4, shared leaf v6, middle v3 v4 v5 v7 v8
    CHECK(witness_divisor(spec_of(Sharp{8, 3})) == Divisor::of_vertices({"v3", "v4", "v5", "v7", "v8"}));
}

TEST_CASE("witnesses have rank at least one and the predicted degree")
{
    std::vector<FamilySpec> specs{
        spec_of(CompleteK{4}),          spec_of(CompleteK{5}),
        spec_of(KdMinusKh{6, 3}),       spec_of(KdMinusKh{7, 5}),
        spec_of(Bipartite{2, 3}),       spec_of(Bipartite{3, 3}),
        spec_of(TwoCliquesRemoved{6, {1, 2}, {3, 4, 5}}),
        spec_of(KdMinusEdges{6, {{1, 2}, {3, 4}}}),
    };
    for (int d = 5; d <= 7; ++d)
        for (int k1 = 1; k1 <= d - 2; ++k1)
            specs.push_back(spec_of(Sharp{d, k1}));
    for (const auto& s : specs) {
        CAPTURE(describe(s));
        auto g = build(s);
        auto w = witness_divisor(s);
        CHECK(w.degree() == predicted_gonality(s));
        CHECK(w.is_effective());
        CHECK(testing::rank_at_least_one(g, w, 1));
    }
}

TEST_CASE("spec invariants are enforced")
{
    CHECK_THROWS_AS(build(spec_of(KdMinusKh{5, 5})), InvalidSpec);
    CHECK_THROWS_AS(build(spec_of(KdMinusKh{5, 1})), InvalidSpec);
    CHECK_THROWS_AS(build(spec_of(Bipartite{1, 4})), InvalidSpec);
    CHECK_THROWS_AS(build(spec_of(Sharp{6, 0})), InvalidSpec);
    CHECK_THROWS_AS(build(spec_of(Sharp{6, 5})), InvalidSpec);
    CHECK_THROWS_AS(build(spec_of(KdMinusEdges{5, {{1, 2}, {1, 2}}})), InvalidSpec);
    CHECK_THROWS_AS(build(spec_of(KdMinusEdges{5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}}})), InvalidSpec);
    CHECK_THROWS_AS(build(spec_of(KdMinusEdges{5, {{1, 1}}})), InvalidSpec);
    CHECK_THROWS_AS(build(spec_of(TwoCliquesRemoved{4, {1, 2, 3, 4}, {1, 2}})), InvalidSpec);

    auto bad = spec_of(Sharp{8, 3});
    bad.overrides[{6, 3}] = Rational(2);  // one edge at the shared leaf only
    CHECK_THROWS_AS(build(bad), InvalidSpec);
    auto ok = spec_of(Sharp{8, 3});
    for (int m : {3, 4, 5, 7, 8})
        ok.overrides[{std::min(6, m), std::max(6, m)}] = Rational(2);
    CHECK_NOTHROW(build(ok));
    auto missing = spec_of(Sharp{8, 3});
    missing.overrides[{1, 6}] = Rational(2);  // removed edge
    CHECK_THROWS_AS(build(missing), InvalidSpec);
}

TEST_CASE("sharp family layout, valences and connectivity")
{
    for (int d = 4; d <= 10; ++d)
        for (int k1 = 1; k1 <= d - 2; ++k1) {
            CAPTURE(d);
            CAPTURE(k1);
            const int k2 = d - 1 - k1;
            auto s = spec_of(Sharp{d, k1});
            auto g = build(s);
            auto removed = removed_edges(s);
            CHECK(int(removed.size()) == d - 1);
            CHECK(max_clique_in_removed(removed) == 2);
            CHECK(valence_of(g, "v1") == d - 1 - k1);
            CHECK(valence_of(g, "v2") == d - 1 - k2);
            auto layout = sharp_layout(Sharp{d, k1});
            CHECK(layout.shared_leaf == k2 + 2);
            CHECK(valence_of(g, vertex_name(layout.shared_leaf)) == d - 3);
            CHECK(int(layout.middle().size()) == d - 3);
            for (int m : layout.middle())
                CHECK(valence_of(g, vertex_name(m)) == d - 2);
            CHECK(validate(g).ok());
        }
    auto g = build(spec_of(Sharp{8, 3}));
    CHECK(valence_of(g, "v1") == 4);
    CHECK(valence_of(g, "v2") == 3);
}

TEST_CASE("general removal prediction only depends on the clique number")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 12; ++trial) {
        int count = std::uniform_int_distribution<int>(1, 3)(rng);
        auto removed = sampling::random_removal(rng, 5, count);
        auto s = spec_of(KdMinusEdges{5, removed});
        CAPTURE(describe(s));
        int h = testing::brute_force_clique(5, removed);
        CHECK(predicted_gonality(s) == 5 - h);
        CHECK(gonality_search(build(s)).value == 5 - h);
    }
}

TEST_CASE("worked-example graphs")
{
    auto a = sharp_example_a();
    CHECK(a.vertex_count() == 8);
    CHECK(a.edge_count() == 21);
    CHECK(valence_of(a, "v1") == 4);  // vbar, v4, v5, v2
    CHECK(valence_of(a, "v2") == 3);  // v1, v6, v7
    CHECK(valence_of(a, "v3") == 5);
    auto b = sharp_example_b();
    CHECK(b.edge_count() == 21);
    CHECK(valence_of(b, "v") == 1);
    CHECK(valence_of(b, "vbar") == 6);
}

TEST_CASE("case catalog ranks match the case analysis")
{
    for (int d = 6; d <= 7; ++d) {
        auto catalog = sharp_case_catalog(d);
        CHECK(catalog.size() > 3);
        int claimed_true = 0;
        for (const auto& fixture : catalog) {
            CAPTURE(fixture.name);
            CHECK(fixture.divisor.degree() == d - 3);
            CHECK(validate(fixture.graph).ok());
            CHECK(fixture.graph.vertex_count() == std::size_t(d));
            REQUIRE(fixture.rank_at_least_one.has_value());
            bool computed = testing::rank_at_least_one(fixture.graph, fixture.divisor, fixture.subdivision);
            CHECK(computed == *fixture.rank_at_least_one);
            claimed_true += computed;
        }
        CHECK(claimed_true >= 2);
    }
}

TEST_CASE("third configuration depends on lengths only through the fixture")
{
    auto unit = sharp_third_case(7, Rational(1));
    CHECK(testing::rank_at_least_one(unit.graph, unit.divisor, 1));
    auto stretched = sharp_third_case(7, Rational(2));
    CHECK_FALSE(stretched.rank_at_least_one.has_value());
    CHECK_NOTHROW(testing::rank_at_least_one(stretched.graph, stretched.divisor, 1));
}

}
