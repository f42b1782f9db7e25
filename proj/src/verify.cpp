#include "gonlab/verify.hpp"

#include <chrono>
#include <functional>
#include <random>

#include "gonlab/bounds.hpp"
#include "gonlab/error.hpp"
#include "gonlab/families.hpp"
#include "gonlab/harmonic.hpp"
#include "gonlab/lattice.hpp"
#include "gonlab/rank.hpp"
#include "gonlab/reduction.hpp"
#include "gonlab/sampling.hpp"

namespace gonlab {

namespace {

using namespace families;

struct Outcome {
    std::string expected;
    std::string computed;
    bool passed = false;
};

class Runner {
public:
    explicit Runner(VerifySuiteResult& result) : result_(result) {}

    void check(std::string name, std::string reference, const std::function<Outcome()>& body)
    {
        CheckRecord record{std::move(name), std::move(reference), "", "", false, 0};
        auto start = std::chrono::steady_clock::now();
        try {
            auto outcome = body();
            record.expected = outcome.expected;
            record.computed = outcome.computed;
            record.passed = outcome.passed;
        } catch (const std::exception& e) {
            record.computed = std::string("error: ") + e.what();
        }
        record.runtime_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        result_.checks.push_back(std::move(record));
    }

private:
    VerifySuiteResult& result_;
};

FamilySpec spec_of(Variant v)
{
    FamilySpec s;
    s.variant = std::move(v);
    return s;
}

bool rank_at_least_one(const MetricGraph& g, const Divisor& d, int s)
{
    auto model = LatticeModel::build(g, s);
    auto chips = model.to_chips(d);
    return has_rank_at_least_one(model, chips, rank_support(model, {}));
}

Outcome family_outcome(const FamilySpec& spec, const VerifyOptions& opts)
{
    auto g = build(spec);
    RankOptions ro;
    ro.jobs = opts.jobs;
    auto cert = gonality_search(g, ro);
    int predicted = predicted_gonality(spec);
    auto witness = witness_divisor(spec);
    bool witness_ok = witness.degree() == predicted && rank_at_least_one(g, witness, 1);
    auto bound = disjoint_path_bound(g);
    bool bound_ok = bound.n - 1 <= cert.value;
    bool exhausted = cert.value == 0 || (cert.exhaustion.exhausted && cert.exhaustion.degree == cert.value - 1);
    return {"gonality " + std::to_string(predicted) + ", witness of rank >= 1",
            "gonality " + std::to_string(cert.value) + (witness_ok ? ", witness ok" : ", witness FAILED") +
                ", path bound " + std::to_string(bound.n - 1) + (exhausted ? "" : ", exhaustion missing"),
            cert.value == predicted && witness_ok && bound_ok && exhausted};
}

Outcome equivalence_outcome(const MetricGraph& g, const std::vector<Divisor>& chain)
{
    bool ok = true;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        ok = ok && linearly_equivalent(g, chain[i], chain[i + 1]);
    return {"all equivalent", ok ? "all equivalent" : "not equivalent", ok};
}

} // namespace

bool VerifySuiteResult::passed() const { return failures() == 0; }

std::size_t VerifySuiteResult::failures() const
{
    return std::size_t(std::count_if(checks.begin(), checks.end(), [](const CheckRecord& c) { return !c.passed; }));
}

VerifySuiteResult run_suite(const std::string& suite, const VerifyOptions& opts_in)
{
    if (suite != "paper" && suite != "quick")
        throw InvalidSpec("unknown suite '" + suite + "' (known: paper, quick)");
    VerifyOptions opts = opts_in;
    if (suite == "quick")
        opts.max_d = std::min(opts.max_d, 6);
    if (opts.max_d < 3)
        throw InvalidSpec("max-d must be at least 3");
    const int max_d = opts.max_d;

    VerifySuiteResult result{suite, {}};
    Runner run(result);
    auto family = [&](const std::string& name, const std::string& reference, const FamilySpec& spec) {
        run.check(name, reference, [&] { return family_outcome(spec, opts); });
    };

    for (int d = 3; d <= max_d; ++d)
        family("K_" + std::to_string(d), "complete graph example: gonality d-1", spec_of(CompleteK{d}));

    for (int d = 4; d <= max_d; ++d)
        for (int h = 2; h < d; ++h)
            family("K_" + std::to_string(d) + " minus K_" + std::to_string(h),
                   "clique-removal theorem: gonality d-h", spec_of(KdMinusKh{d, h}));

    for (auto [m, n] : {std::pair{2, 2}, {2, 3}, {3, 3}, {2, 4}, {3, 4}, {4, 4}})
        if (m + n <= max_d)
            family("K_{" + std::to_string(m) + "," + std::to_string(n) + "}",
                   "bipartite corollary: gonality min(m,n)", spec_of(Bipartite{m, n}));

    const std::vector<TwoCliquesRemoved> two_cliques{
        {5, {1, 2}, {3, 4}}, {6, {1, 2, 3}, {4, 5}}, {6, {1, 2, 3}, {3, 4, 5}}, {7, {1, 2, 3, 4}, {4, 5, 6}}};
    for (const auto& t : two_cliques)
        if (t.d <= max_d) {
            auto spec = spec_of(t);
            family(describe(spec), "two-clique theorem: gonality d - max(m,n)", spec);
        }

    {
        std::mt19937_64 rng(opts.seed);
        const int d = std::min(max_d, 6);
        for (int trial = 0; trial < 10; ++trial) {
            int count = std::uniform_int_distribution<int>(1, d - 2)(rng);
            auto spec = spec_of(KdMinusEdges{d, sampling::random_removal(rng, d, count)});
            family(describe(spec), "general removal theorem: gonality d-h for the largest removed K_h", spec);
        }
    }

    for (int d = 5; d <= max_d; ++d)
        for (int k1 = 1; k1 <= d - 2; ++k1) {
            auto spec = spec_of(Sharp{d, k1});
            family(describe(spec), "sharpness theorem: d-1 removed edges, gonality d-3", spec);
        }

    run.check("K_8 minus K_4 witness rank", "clique-removal example figure: (v5)+(v6)+(v7)+(v8) has rank 1", [] {
        auto spec = spec_of(KdMinusKh{8, 4});
        auto g = build(spec);
        int r = rank(g, witness_divisor(spec));
        return Outcome{"rank 1, 22 edges",
                       "rank " + std::to_string(r) + ", " + std::to_string(g.edge_count()) + " edges",
                       r == 1 && g.edge_count() == 22};
    });

    run.check("first sharp example chain", "sharpness example with shared leaf v3: 5(v3) ~ v4+v5+v6+v7+vbar ~ 3(v1)+2(v2)",
              [] {
                  auto g = sharp_example_a();
                  return equivalence_outcome(
                      g, {Divisor{{PointRef::vertex("v3"), 5}}, Divisor::of_vertices({"v4", "v5", "v6", "v7", "vbar"}),
                          Divisor{{PointRef::vertex("v1"), 3}, {PointRef::vertex("v2"), 2}}});
              });
    run.check("second sharp example chain", "sharpness example with leaf v on vbar: 5(vbar) ~ v1+v2+v4+v5+v7 ~ 5(v)",
              [] {
                  auto g = sharp_example_b();
                  return equivalence_outcome(
                      g, {Divisor{{PointRef::vertex("vbar"), 5}}, Divisor::of_vertices({"v1", "v2", "v4", "v5", "v7"}),
                          Divisor{{PointRef::vertex("v"), 5}}});
              });
    run.check("second sharp example reduction", "v-reduced form of 5(vbar) is 5(v)", [] {
        auto g = sharp_example_b();
        auto reduced = reduce(g, Divisor{{PointRef::vertex("vbar"), 5}}, PointRef::vertex("v"));
        return Outcome{"5(v)", to_string(reduced), reduced == Divisor{{PointRef::vertex("v"), 5}}};
    });

    for (int d = 6; d <= std::min(max_d, 7); ++d)
        run.check("sharpness case catalog d=" + std::to_string(d),
                  "sharpness theorem case analysis: claimed rank of each divisor shape", [d] {
                      auto catalog = sharp_case_catalog(d);
                      std::size_t agree = 0;
                      for (const auto& f : catalog)
                          if (f.rank_at_least_one &&
                              rank_at_least_one(f.graph, f.divisor, f.subdivision) == *f.rank_at_least_one)
                              ++agree;
                      return Outcome{std::to_string(catalog.size()) + " fixtures agree",
                                     std::to_string(agree) + " fixtures agree", agree == catalog.size()};
                  });

    for (int d = 5; d <= max_d; ++d)
        for (int k1 = 1; k1 <= d - 2; ++k1)
            run.check("harmonic sharp(d=" + std::to_string(d) + ", k1=" + std::to_string(k1) + ")",
                      "degree d-3 morphism to a tree, its finite modification and liftability", [d, k1] {
                          const int k2 = d - 1 - k1;
                          auto phi = build_sharp_morphism(d, k1);
                          auto report = check_harmonic(phi);
                          bool table = report.harmonic && report.global_degree == d - 3 &&
                                       report.local_degree.at("v1") == d - k1 - 2 &&
                                       report.local_degree.at("v2") == d - k2 - 2 &&
                                       report.local_degree.at(vertex_name(k2 + 2)) == d - 3;
                          auto fin = make_finite(phi);
                          auto fin_report = check_harmonic(fin);
                          bool finite = fin.is_finite() && fin_report.harmonic &&
                                        fin_report.global_degree == d - 3 && is_effective_morphism(fin) &&
                                        liftability_certificate(fin).verdict;
                          auto fiber = fiber_divisor(fin, PointRef::vertex("u2"));
                          bool fiber_ok = rank_at_least_one(phi.source, fiber, 1);
                          return Outcome{"degree table ok, finite modification ok, fiber rank >= 1",
                                         std::string(table ? "degree table ok" : "degree table FAILED") +
                                             (finite ? ", finite modification ok" : ", finite modification FAILED") +
                                             (fiber_ok ? ", fiber rank >= 1" : ", fiber rank 0"),
                                         table && finite && fiber_ok};
                      });

    run.check("Riemann-Roch", "Riemann-Roch theorem: r(D) - r(K-D) = deg(D) + 1 - g", [&] {
        std::mt19937_64 rng(opts.seed + 1);
        int zero = 0;
        const int cases = 40;
        for (int i = 0; i < cases; ++i) {
            int n = std::uniform_int_distribution<int>(2, 5)(rng);
            auto g = sampling::random_graph(rng, n, std::uniform_int_distribution<int>(0, 2)(rng));
            auto d = sampling::random_divisor(rng, g, 4, -1, 2);
            zero += riemann_roch_residual(g, d) == 0;
        }
        return Outcome{std::to_string(cases) + " zero residuals", std::to_string(zero) + " zero residuals",
                       zero == cases};
    });

    run.check("lattice exhaustion at subdivision 2", "consistency of the lower bounds one level finer", [&] {
        std::vector<FamilySpec> specs{spec_of(CompleteK{std::min(max_d, 6)}), spec_of(KdMinusKh{std::min(max_d, 6), 3}),
                                      spec_of(Bipartite{2, 3}), spec_of(Sharp{std::min(max_d, 6), 2})};
        if (max_d >= 8)
            specs.push_back(spec_of(KdMinusKh{8, 4}));
        int clean = 0;
        RankOptions ro;
        ro.jobs = opts.jobs;
        for (const auto& s : specs)
            clean += !sweep_degree(build(s), predicted_gonality(s) - 1, 2, ro).witness.has_value();
        return Outcome{std::to_string(specs.size()) + " families exhausted",
                       std::to_string(clean) + " families exhausted", clean == int(specs.size())};
    });

    return result;
}

io::Json to_json(const VerifySuiteResult& result, bool timings)
{
    io::Json checks = io::Json::array();
    for (const auto& c : result.checks) {
        io::Json entry{{"name", c.name},
                       {"reference", c.reference},
                       {"expected", c.expected},
                       {"computed", c.computed},
                       {"passed", c.passed}};
        if (timings)
            entry["runtime_ms"] = c.runtime_ms;
        checks.push_back(entry);
    }
    return {{"suite", result.suite},
            {"passed", result.passed()},
            {"checks_run", result.checks.size()},
            {"failures", result.failures()},
            {"checks", checks}};
}

} // namespace gonlab
