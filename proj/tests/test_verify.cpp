#include "doctest.h"
#include "gonlab/error.hpp"
#include "gonlab/verify.hpp"

using namespace gonlab;

TEST_SUITE("verify") {

TEST_CASE("quick suite passes")
{
    VerifyOptions opts;
    opts.max_d = 6;
    auto result = run_suite("quick", opts);
    CHECK(result.suite == "quick");
    CHECK_FALSE(result.checks.empty());
    for (const auto& c : result.checks)
        CHECK_MESSAGE(c.passed, c.name << ": expected " << c.expected << ", computed " << c.computed);
    CHECK(result.failures() == 0);
    CHECK(result.passed());
}

TEST_CASE("suite 'paper' passes and covers every area")
{
    VerifyOptions opts;
    opts.max_d = 7;
    auto result = run_suite("paper", opts);
    CHECK(result.passed());
    auto has = [&](const std::string& prefix) {
        for (const auto& c : result.checks)
            if (c.name.rfind(prefix, 0) == 0)
                return true;
        return false;
    };
    for (const auto& c : result.checks)
        CHECK_MESSAGE(!c.reference.empty(), c.name);
    CHECK(result.checks.size() >= 40);
    CHECK(has("harmonic sharp"));
    CHECK(has("Riemann-Roch"));
}

TEST_CASE("results are deterministic")
{
    VerifyOptions opts;
    opts.max_d = 6;
    auto a = to_json(run_suite("quick", opts));
    opts.jobs = 1;
    auto b = to_json(run_suite("quick", opts));
    CHECK(a == b);
    CHECK(a.dump().find("runtime_ms") == std::string::npos);
    CHECK(to_json(run_suite("quick", opts), true).dump().find("runtime_ms") != std::string::npos);
}

TEST_CASE("unknown suites are rejected")
{
    CHECK_THROWS_AS(run_suite("everything"), InvalidSpec);
}

}
