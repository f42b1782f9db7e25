#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gonlab/rational.hpp"

namespace gonlab {

struct Edge {
    std::string id;
    std::size_t first = 0;  // offsets along the edge are measured from here
    std::size_t second = 0;
    Length length;

    std::size_t other(std::size_t v) const { return v == first ? second : first; }
};

/// Finite multigraph with exact edge lengths. Vertices and edges are addressed
/// by opaque string ids; insertion order is preserved but never relied upon
/// for results (algorithms sort by id where order matters).
class MetricGraph {
public:
    std::size_t add_vertex(std::string id);
    std::size_t add_edge(std::string id, const std::string& from, const std::string& to,
                         Length length = Length(1));

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::string& vertex_id(std::size_t v) const { return vertices_.at(v); }
    const std::vector<std::string>& vertex_ids() const { return vertices_; }
    std::optional<std::size_t> find_vertex(const std::string& id) const;
    std::size_t vertex(const std::string& id) const;  // throws InvalidGraph

    const Edge& edge(std::size_t e) const { return edges_.at(e); }
    const std::vector<Edge>& edges() const { return edges_; }
    std::optional<std::size_t> find_edge(const std::string& id) const;
    const Edge& edge(const std::string& id) const;  // throws InvalidGraph
    std::size_t edge_index(const std::string& id) const;

    /// Edge indices incident to v; a loop would appear twice.
    const std::vector<std::size_t>& incident(std::size_t v) const { return incidence_.at(v); }
    std::size_t valence(std::size_t v) const { return incidence_.at(v).size(); }

    bool has_infinite_edges() const;

    /// Vertex indices sorted by id.
    std::vector<std::size_t> sorted_vertices() const;
    /// Edge indices sorted by id.
    std::vector<std::size_t> sorted_edges() const;

    friend bool operator==(const MetricGraph& a, const MetricGraph& b);

private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> incidence_;
    std::unordered_map<std::string, std::size_t> vertex_index_;
    std::unordered_map<std::string, std::size_t> edge_index_;
};

/// A point of a metric graph: a vertex, or a point strictly inside a finite
/// edge at a rational offset from the edge's first endpoint.
struct PointRef {
    enum class Kind { Vertex, Interior };

    Kind kind = Kind::Vertex;
    std::string id;  // vertex id or edge id
    Rational offset{0};

    static PointRef vertex(std::string id) { return {Kind::Vertex, std::move(id), Rational(0)}; }
    static PointRef interior(std::string edge, Rational offset)
    {
        return {Kind::Interior, std::move(edge), offset};
    }

    bool is_vertex() const { return kind == Kind::Vertex; }

    friend bool operator==(const PointRef& a, const PointRef& b)
    {
        return a.kind == b.kind && a.id == b.id && a.offset == b.offset;
    }
    friend bool operator<(const PointRef& a, const PointRef& b)
    {
        if (a.kind != b.kind)
            return a.kind < b.kind;
        if (a.id != b.id)
            return a.id < b.id;
        return a.offset < b.offset;
    }
};

std::string to_string(const PointRef& p);

/// Direction leaving `base` along `edge`. At a vertex the edge is incident to
/// the base; at an interior point `toward_second` picks the side.
struct TangentDirection {
    PointRef base;
    std::string edge;
    bool toward_second = true;

    friend bool operator==(const TangentDirection&, const TangentDirection&) = default;
};

/// Throws InvalidGraph if p does not name a point of g (unknown id, offset
/// not strictly inside, interior of an infinite edge).
void check_point(const MetricGraph& g, const PointRef& p);

std::vector<TangentDirection> tangent_directions(const MetricGraph& g, const PointRef& p);
std::size_t valence(const MetricGraph& g, const PointRef& p);

struct Violation {
    std::string kind;  // "disconnected", "nonpositive length", ...
    std::string where; // offending vertex or edge id
    std::string message;
};

struct Diagnostics {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

Diagnostics validate(const MetricGraph& g);

/// Throws InvalidGraph carrying the diagnostics summary.
void require_valid(const MetricGraph& g);
void require_finite(const MetricGraph& g);

/// First Betti number |E| - |V| + 1.
int genus(const MetricGraph& g);

struct Subdivision {
    MetricGraph graph;
    /// Old points at offsets k*l/s (and old vertices) -> new vertex id.
    std::map<PointRef, std::string> lattice;
};

/// Splits every edge into s equal pieces. New vertices on edge e are named
/// "e@k" (k = 1..s-1) and new edges "e#k" (k = 1..s). s == 1 returns a copy.
Subdivision subdivide(const MetricGraph& g, int s);

struct Integerized {
    MetricGraph graph;
    Rational scale{1};
};

/// Multiplies every length by the least common denominator.
Integerized integerize(const MetricGraph& g);

} // namespace gonlab
