#include <random>

#include "doctest.h"
#include "gonlab/error.hpp"
#include "gonlab/families.hpp"
#include "gonlab/rank.hpp"
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

families::FamilySpec spec_of(families::Variant v)
{
    families::FamilySpec s;
    s.variant = std::move(v);
    return s;
}

bool same_certificate(const GonalityCertificate& a, const GonalityCertificate& b)
{
    return a.value == b.value && a.witness == b.witness && a.exhaustion.degree == b.exhaustion.degree &&
           a.exhaustion.exhausted == b.exhaustion.exhausted && a.exhaustion.candidates == b.exhaustion.candidates &&
           a.exhaustion.classes == b.exhaustion.classes && a.lower_bound == b.lower_bound;
}

} // namespace

TEST_SUITE("rank") {

TEST_CASE("effective representatives")
{
    auto k3 = testing::complete_graph(3);
    CHECK_FALSE(has_effective_rep(k3, Divisor{{V("v1"), -1}}));
    CHECK(has_effective_rep(k3, Divisor{{V("v2"), 2}}));
    Divisor mixed{{V("v2"), 1}, {V("v3"), 1}, {V("v1"), -1}};
    CHECK(has_effective_rep(k3, mixed));
    CHECK(oracle::winnable(k3, mixed));
    CHECK(reduce(k3, mixed, V("v1")) == Divisor{{V("v1"), 1}});
}

TEST_CASE("rank examples")
{
    auto k4 = testing::complete_graph(4);
    auto three = Divisor::of_vertices({"v2", "v3", "v4"});
    CHECK(rank(k4, three) == 1);
    CHECK(oracle::brute_rank(k4, three) == 1);
    CHECK(rank(k4, canonical_divisor(k4)) == 2);
    CHECK(oracle::brute_rank(k4, canonical_divisor(k4)) == 2);
    CHECK(rank(k4, Divisor{}) == 0);
    CHECK(rank(k4, Divisor{{V("v1"), -1}}) == -1);

    auto k8 = families::build(spec_of(families::KdMinusKh{8, 4}));
    auto w = Divisor::of_vertices({"v5", "v6", "v7", "v8"});
    CHECK(rank(k8, w) == 1);
    CHECK(oracle::brute_rank(k8, w) == 1);
}

TEST_CASE("rank matches the brute-force oracle on unit graphs")
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        auto g = unit_copy(sampling::random_graph(rng, std::uniform_int_distribution<int>(2, 6)(rng),
                                                  std::uniform_int_distribution<int>(0, 3)(rng)));
        auto d = sampling::random_divisor(rng, g, 5, -1, 2, false);
        CAPTURE(to_string(d));
        CHECK(rank(g, d) == oracle::brute_rank(g, d));
    }
}

TEST_CASE("Riemann-Roch examples")
{
    auto k4 = testing::complete_graph(4);
    std::mt19937_64 rng(42);
    for (int deg = -2; deg <= 6; ++deg) {
        auto d = sampling::random_divisor(rng, k4, 3, -1, 2);
        d.add(V("v1"), deg - d.degree());
        CHECK(riemann_roch_residual(k4, d) == 0);
    }
    CHECK(riemann_roch_residual(k4, Divisor{}) == 0);
    CHECK(riemann_roch_residual(k4, canonical_divisor(k4)) == 0);
    CHECK(riemann_roch_residual(testing::cycle_graph(3, Rational(1, 2)), Divisor{}) == 0);
}

TEST_CASE("rank invariants on random graphs")
{
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        auto g = sampling::random_graph(rng, std::uniform_int_distribution<int>(2, 5)(rng),
                                        std::uniform_int_distribution<int>(0, 2)(rng));
        auto d = sampling::random_divisor(rng, g, 4, -1, 2);
        CAPTURE(to_string(d));
        int r = rank(g, d);
        CHECK(r == rank(g, d + sampling::random_principal(rng, g, 2)));
        if (d.degree() >= 0)
            CHECK(r >= d.degree() - genus(g));
        int s = minimal_subdivision(g, d);
        RankOptions finer;
        finer.subdivision = 2 * s;
        CHECK(r == rank(g, d, finer));
        RankOptions vertices_only;
        vertices_only.subdivision = s;
        vertices_only.support = SupportKind::OriginalVertices;
        CHECK(r == rank(g, d, vertices_only));
    }
}

TEST_CASE("rank budget is enforced")
{
    RankOptions tiny;
    tiny.max_states = 3;
    CHECK_THROWS_AS(rank(testing::complete_graph(5), Divisor{{V("v1"), 6}}, tiny), BudgetExceeded);
}

TEST_CASE("gonality examples")
{
    auto k4 = gonality_search(testing::complete_graph(4));
    CHECK(k4.value == 3);
    CHECK(k4.witness.degree() == 3);
    CHECK(rank(testing::complete_graph(4), k4.witness) >= 1);
    CHECK(k4.exhaustion.exhausted);
    CHECK(k4.exhaustion.degree == 2);

    CHECK(gonality_search(families::build(spec_of(families::KdMinusKh{5, 3}))).value == 2);
    auto k34 = families::build(spec_of(families::Bipartite{3, 4}));
    auto cert = gonality_search(k34);
    CHECK(cert.value == 3);
    CHECK(rank(k34, cert.witness) >= 1);
    CHECK(gonality_search(testing::path_graph(4)).value == 1);
    CHECK(gonality_search(testing::cycle_graph(5)).value == 2);
}

TEST_CASE("parallel and serial searches agree")
{
    std::vector<MetricGraph> graphs{testing::complete_graph(5), testing::cycle_graph(6, Rational(1, 2)),
                                    families::build(spec_of(families::Sharp{6, 2})),
                                    families::build(spec_of(families::TwoCliquesRemoved{6, {1, 2, 3}, {3, 4}}))};
    std::mt19937_64 rng(44);
    for (int k = 0; k < 4; ++k)
        graphs.push_back(sampling::random_graph(rng, 5, 2));
    for (const auto& g : graphs) {
        for (int s : {1, 2}) {
            RankOptions opts;
            opts.subdivision = s;
            auto reference = gonality_search_serial(g, opts);
            for (int jobs : {1, 2, 3}) {
                opts.jobs = jobs;
                auto parallel = gonality_search(g, opts);
                CHECK(same_certificate(parallel, reference));
            }
            CHECK(rank(g, reference.witness, opts) >= 1);
        }
    }
}

TEST_CASE("lower-degree sweeps at finer levels stay empty")
{
    auto k5 = testing::complete_graph(5);
    for (int s : {1, 2}) {
        auto sweep = sweep_degree(k5, 3, s);
        CHECK_FALSE(sweep.witness.has_value());
        CHECK(sweep.candidates >= sweep.classes);
        CHECK(sweep_degree(k5, 4, s).witness.has_value());
    }
}

}
