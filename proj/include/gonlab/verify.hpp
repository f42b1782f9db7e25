#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gonlab/io.hpp"

namespace gonlab {

struct CheckRecord {
    std::string name;
    std::string reference;  // theorem, example or figure being checked
    std::string expected;
    std::string computed;
    bool passed = false;
    double runtime_ms = 0;
};

struct VerifySuiteResult {
    std::string suite;
    std::vector<CheckRecord> checks;

    bool passed() const;
    std::size_t failures() const;
};

struct VerifyOptions {
    int max_d = 8;
    std::uint64_t seed = 20240611;
    int jobs = 0;
};

/// Known suites: "paper" (every theorem, example and figure check) and
/// "quick" (the same checks capped at d = 6). Throws InvalidSpec otherwise.
VerifySuiteResult run_suite(const std::string& suite, const VerifyOptions& opts = {});

/// Runtimes are left out unless asked for, so the output is reproducible.
io::Json to_json(const VerifySuiteResult& result, bool timings = false);

} // namespace gonlab
