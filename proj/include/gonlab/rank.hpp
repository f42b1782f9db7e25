#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gonlab/divisor.hpp"
#include "gonlab/graph.hpp"
#include "gonlab/lattice.hpp"

namespace gonlab {

enum class SupportKind {
    LatticeVertices,   // every vertex of the subdivided model
    OriginalVertices,  // the vertex set of the input graph
    Custom,
};

struct RankOptions {
    std::optional<int> subdivision;
    SupportKind support = SupportKind::LatticeVertices;
    std::vector<PointRef> custom_support;
    /// Distinct divisor classes the rank recursion may visit.
    std::size_t max_states = 4'000'000;
    /// Candidate divisors a gonality sweep may enumerate per degree.
    std::size_t max_candidates = 20'000'000;
    std::optional<int> max_degree;
    /// Worker threads for the parallel sweep; 0 means the OpenMP default.
    int jobs = 0;
};

bool has_effective_rep(const MetricGraph& g, const Divisor& d, const RankOptions& opts = {});

/// Baker-Norine rank; -1 when |D| is empty.
int rank(const MetricGraph& g, const Divisor& d, const RankOptions& opts = {});

/// rk(D) - rk(K - D) - deg(D) - 1 + g; zero whenever Riemann-Roch holds.
int riemann_roch_residual(const MetricGraph& g, const Divisor& d, const RankOptions& opts = {});

struct ExhaustionRecord {
    int subdivision = 1;
    int degree = 0;          // the degree that was swept completely
    bool exhausted = false;  // every candidate of `degree` tested, none of rank >= 1
    std::size_t candidates = 0;
    std::size_t classes = 0;
};

struct GonalityCertificate {
    int value = 0;
    Divisor witness;
    ExhaustionRecord exhaustion;
    std::string lower_bound;
};

/// Result of testing every effective lattice divisor of one degree.
struct DegreeSweep {
    int degree = 0;
    std::size_t candidates = 0;
    std::size_t classes = 0;
    /// Lexicographically least candidate of rank >= 1, if any.
    std::optional<std::vector<int>> witness;
};

/// Ascending-degree search with OpenMP-parallel candidate evaluation.
GonalityCertificate gonality_search(const MetricGraph& g, const RankOptions& opts = {});
/// Single-threaded reference with no class deduplication.
GonalityCertificate gonality_search_serial(const MetricGraph& g, const RankOptions& opts = {});

DegreeSweep sweep_degree(const LatticeModel& m, int degree, const std::vector<int>& support,
                         const RankOptions& opts);
DegreeSweep sweep_degree_serial(const LatticeModel& m, int degree, const std::vector<int>& support,
                                const RankOptions& opts);

/// Lattice indices the rank test quantifies over.
std::vector<int> rank_support(const LatticeModel& m, const RankOptions& opts);

/// rank >= 1 test on the lattice: reduce(D, a)(a) >= 1 for every support vertex a.
bool has_rank_at_least_one(const LatticeModel& m, std::span<const int> chips, const std::vector<int>& support);

/// Convenience: exhaustive sweep of one degree on g at level s.
DegreeSweep sweep_degree(const MetricGraph& g, int degree, int subdivision, const RankOptions& opts = {});

} // namespace gonlab
