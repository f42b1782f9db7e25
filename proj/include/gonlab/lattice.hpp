#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gonlab/divisor.hpp"
#include "gonlab/graph.hpp"

namespace gonlab {

/// Chip counts indexed by lattice vertex.
using ChipVector = std::vector<int>;

/// Integer finite-graph model of a metric graph: lengths are scaled to
/// integers and every unit is split into `subdivision` steps, so each lattice
/// edge has the same length. Index order: original vertices sorted by id,
/// then interior points edge by edge (edges sorted by id), offsets ascending.
class LatticeModel {
public:
    static LatticeModel build(const MetricGraph& g, int subdivision);

    int subdivision() const { return subdivision_; }
    const Rational& scale() const { return scale_; }
    std::size_t size() const { return points_.size(); }
    std::size_t original_vertex_count() const { return original_vertices_; }
    std::size_t edge_count() const { return neighbors_.size() / 2; }
    int genus() const { return int(edge_count()) - int(size()) + 1; }

    std::span<const int> neighbors(int v) const
    {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }
    int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }

    const PointRef& point(int v) const { return points_.at(v); }
    std::optional<int> find(const PointRef& p) const;
    int index_of(const PointRef& p) const;  // throws NotLatticeSupported

    ChipVector to_chips(const Divisor& d) const;
    Divisor to_divisor(std::span<const int> chips) const;

private:
    struct EdgeRun {
        std::int64_t steps = 0;    // number of lattice edges along it
        int first_interior = 0;    // lattice index of step 1 (if steps > 1)
        Rational step_length{1};   // in the source graph's units
    };

    int subdivision_ = 1;
    Rational scale_{1};
    std::size_t original_vertices_ = 0;
    std::vector<PointRef> points_;
    std::vector<int> offsets_;
    std::vector<int> neighbors_;
    std::unordered_map<std::string, int> vertex_lattice_;
    std::unordered_map<std::string, EdgeRun> runs_;
};

/// Smallest s such that every listed point is a lattice point at level s.
int minimal_subdivision(const MetricGraph& g, const std::vector<PointRef>& points);
int minimal_subdivision(const MetricGraph& g, const Divisor& d);

/// Level to use for the given divisors: `requested` if present (checked),
/// otherwise the minimal one.
int resolve_subdivision(const MetricGraph& g, const std::vector<const Divisor*>& divisors,
                        std::optional<int> requested);

namespace kernels {

    /// Dhar burning from q; `chips` must be non-negative away from q.
    /// Returns burnt flags; `order` (if given) receives the ignition order.
    std::vector<char> burn(const LatticeModel& m, std::span<const int> chips, int q,
                           std::vector<int>* order = nullptr);

    /// Moves all debt onto q by firing BFS balls around q, outermost layer first.
    void collect_debt(const LatticeModel& m, ChipVector& chips, int q);

    /// Replaces chips by the unique q-reduced equivalent divisor. Throws
    /// std::logic_error if the firing budget is exhausted (a bug, not input).
    void reduce(const LatticeModel& m, ChipVector& chips, int q);

    bool is_reduced(const LatticeModel& m, std::span<const int> chips, int q);

    /// Subtracts the Laplacian applied to `script` (firing each vertex
    /// script[v] times).
    void apply_script(const LatticeModel& m, ChipVector& chips, std::span<const std::int64_t> script);

} // namespace kernels

} // namespace gonlab
