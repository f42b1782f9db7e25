#pragma once

#include <random>
#include <utility>
#include <vector>

#include "gonlab/divisor.hpp"
#include "gonlab/graph.hpp"

// Seeded generators shared by the property tests, the acceptance suite and
// the verification runner.
namespace gonlab::sampling {

/// Connected loopless multigraph on v1..vn: a random spanning tree plus
/// `extra` edges, lengths drawn from {1/2, 1, 3/2, 2}.
MetricGraph random_graph(std::mt19937_64& rng, int vertices, int extra);

/// Random divisor with `terms` draws over the vertices (and edge midpoints)
/// of g, coefficients in [lo, hi].
Divisor random_divisor(std::mt19937_64& rng, const MetricGraph& g, int terms, int lo, int hi,
                       bool midpoints = true);

/// `count` distinct edges of K_d as index pairs (i < j), sorted.
std::vector<std::pair<int, int>> random_removal(std::mt19937_64& rng, int d, int count);

/// Sum of `count` principal divisors, each firing a random nonempty proper
/// vertex set (with the edges it spans) for a time in {1/2, 1}.
Divisor random_principal(std::mt19937_64& rng, const MetricGraph& g, int count);

} // namespace gonlab::sampling
