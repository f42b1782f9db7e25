#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gonlab/divisor.hpp"
#include "gonlab/families.hpp"
#include "gonlab/graph.hpp"
#include "gonlab/lattice.hpp"
#include "gonlab/rank.hpp"
#include "gonlab/sampling.hpp"

namespace gonlab::testing {

inline MetricGraph complete_graph(int d)
{
    families::FamilySpec spec;
    spec.variant = families::CompleteK{d};
    return families::build(spec);
}

inline MetricGraph path_graph(int n, Rational length = 1)
{
    MetricGraph g;
    for (int i = 1; i <= n; ++i)
        g.add_vertex("v" + std::to_string(i));
    for (int i = 1; i < n; ++i)
        g.add_edge("e" + std::to_string(i), "v" + std::to_string(i), "v" + std::to_string(i + 1), Length(length));
    return g;
}

inline MetricGraph cycle_graph(int n, Rational length = 1)
{
    auto g = path_graph(n, length);
    g.add_edge("e" + std::to_string(n), "v" + std::to_string(n), "v1", Length(length));
    return g;
}

/// Independent clique oracle: tries every vertex subset.
inline int brute_force_clique(int d, const std::vector<std::pair<int, int>>& edges)
{
    std::set<std::pair<int, int>> adj(edges.begin(), edges.end());
    int best = edges.empty() ? 0 : 2;
    for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
        std::vector<int> members;
        for (int v = 0; v < d; ++v)
            if (mask & (1u << v))
                members.push_back(v + 1);
        bool clique = members.size() >= 2;
        for (std::size_t i = 0; clique && i < members.size(); ++i)
            for (std::size_t j = i + 1; clique && j < members.size(); ++j)
                clique = adj.count({members[i], members[j]}) > 0;
        if (clique)
            best = std::max(best, int(members.size()));
    }
    return best;
}

/// rank(D) >= 1 on the level-s lattice model.
inline bool rank_at_least_one(const MetricGraph& g, const Divisor& d, int subdivision)
{
    auto model = LatticeModel::build(g, subdivision);
    auto chips = model.to_chips(d);
    return has_rank_at_least_one(model, chips, rank_support(model, {}));
}

} // namespace gonlab::testing
