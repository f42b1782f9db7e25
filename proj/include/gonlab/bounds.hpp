#pragma once

#include <string>
#include <vector>

#include "gonlab/graph.hpp"

namespace gonlab {

/// Number of paths between u and v that are pairwise disjoint except at
/// their ends (parallel edges count separately).
int disjoint_paths(const MetricGraph& g, const std::string& u, const std::string& v);

struct PathBound {
    int n = 0;  // gonality >= n - 1
    std::vector<std::string> vertices;
};

/// Largest vertex set whose members are pairwise joined by |set| - 1
/// disjoint paths; the first such set in lexicographic order of sorted ids.
/// Exhaustive over subsets, so limited to 20 vertices (BudgetExceeded).
PathBound disjoint_path_bound(const MetricGraph& g);

} // namespace gonlab
