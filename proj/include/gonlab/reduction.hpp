#pragma once

#include <optional>
#include <vector>

#include "gonlab/divisor.hpp"
#include "gonlab/graph.hpp"

namespace gonlab {

/// Outcome of one fire started at the base point. Points are lattice points
/// of the working subdivision; an edge segment burns iff both its ends do.
struct BurnReport {
    int subdivision = 1;
    std::vector<PointRef> burnt;
    std::vector<PointRef> unburnt;
    /// First point reached and ignited by the fire after the base, if any.
    std::optional<PointRef> nonsaturated_witness;
    /// Boundary of the unburnt set; all saturated when it is nonempty.
    std::vector<PointRef> saturated_boundary;

    bool fully_burnt() const { return unburnt.empty(); }
};

/// Throws InvalidDivisor if d is negative away from q.
BurnReport burn(const MetricGraph& g, const Divisor& d, const PointRef& q,
                std::optional<int> subdivision = std::nullopt);

bool is_reduced(const MetricGraph& g, const Divisor& d, const PointRef& q,
                std::optional<int> subdivision = std::nullopt);

/// The unique q-reduced divisor linearly equivalent to d.
Divisor reduce(const MetricGraph& g, const Divisor& d, const PointRef& q,
               std::optional<int> subdivision = std::nullopt);

} // namespace gonlab
