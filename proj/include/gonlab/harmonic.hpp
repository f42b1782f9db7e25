#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gonlab/divisor.hpp"
#include "gonlab/families.hpp"
#include "gonlab/graph.hpp"

namespace gonlab {

/// Image of a source edge: a target edge id, or a target vertex when the
/// edge is contracted.
struct EdgeImage {
    enum class Kind { Edge, Vertex };
    Kind kind = Kind::Edge;
    std::string id;

    static EdgeImage edge(std::string id) { return {Kind::Edge, std::move(id)}; }
    static EdgeImage vertex(std::string id) { return {Kind::Vertex, std::move(id)}; }
    bool contracted() const { return kind == Kind::Vertex; }

    friend bool operator==(const EdgeImage&, const EdgeImage&) = default;
};

struct GraphMorphism {
    MetricGraph source;
    MetricGraph target;
    std::map<std::string, std::string> vertex_map;
    std::map<std::string, EdgeImage> edge_map;
    std::map<std::string, int> dilation;

    bool is_finite() const;  // no contracted edges

    friend bool operator==(const GraphMorphism&, const GraphMorphism&) = default;
};

/// Throws InvalidMorphism on any structural violation (missing entries,
/// contraction/dilation mismatch, endpoint or length incompatibility).
void check_structure(const GraphMorphism& phi);

struct HarmonicFailure {
    std::string point;  // source vertex, or "fiber" for a global mismatch
    std::string first_direction;
    std::string second_direction;
    int first_sum = 0;
    int second_sum = 0;
};

struct HarmonicReport {
    bool harmonic = false;
    std::map<std::string, int> local_degree;  // per source vertex
    std::optional<int> global_degree;
    std::vector<HarmonicFailure> failures;
};

/// Checks the direction sums at every source vertex and the fiber degree
/// over every target vertex and one interior point of every target edge.
HarmonicReport check_harmonic(const GraphMorphism& phi);

GraphMorphism identity_morphism(const MetricGraph& g);

/// psi after phi; requires phi.target == psi.source.
GraphMorphism compose(const GraphMorphism& phi, const GraphMorphism& psi);

/// Degree d-3 morphism from Sharp(d, k1) onto the path u1 - u2 - u3:
/// shared leaf to u1, middle vertices to u2, v1 and v2 to u3.
GraphMorphism build_sharp_morphism(const families::FamilySpec& spec);
GraphMorphism build_sharp_morphism(int d, int k1);

/// g with one infinite leaf attached at p (splitting the edge first when p
/// is interior).
MetricGraph elementary_modification(const MetricGraph& g, const PointRef& p);

/// Replaces every contracted edge, in id order, by the midpoint
/// modification and repairs harmonicity with extra legs. A contracted edge
/// ending in a leaf of local degree 0 is stretched onto the new target edge
/// instead of split. Throws InvalidMorphism if phi is not harmonic or has a
/// degree-0 vertex that neither rule handles.
GraphMorphism make_finite(const GraphMorphism& phi);

/// R(p) = 2(d_p - 1) - sum over directions (d_v - 1), at every source vertex.
Divisor ramification_divisor(const GraphMorphism& phi);
/// r_p = R(p) - #contracted directions at p.
std::map<std::string, int> ramification_degrees(const GraphMorphism& phi);
/// r_p >= 0 at every source vertex with d_p != 0.
bool is_effective_morphism(const GraphMorphism& phi);

struct DirectionPartition {
    std::string target_edge;
    std::vector<int> parts;  // nonincreasing
};

struct LiftabilityCertificate {
    std::map<std::string, std::vector<DirectionPartition>> partitions;
    bool verdict = false;  // every part equals 1
    std::string reason;
};

LiftabilityCertificate liftability_certificate(const GraphMorphism& phi);

/// Sum of d_q (q) over the fiber of the target point p.
Divisor fiber_divisor(const GraphMorphism& phi, const PointRef& p);

} // namespace gonlab
