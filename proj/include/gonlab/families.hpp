#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gonlab/divisor.hpp"
#include "gonlab/graph.hpp"

namespace gonlab::families {

// Vertices are always v1..vd (1-based indices below); edge "vi-vj" joins vi
// and vj with i < j.

struct CompleteK {
    int d = 0;
};

/// K_d with the edges among v1..vh removed.
struct KdMinusKh {
    int d = 0;
    int h = 0;
};

struct KdMinusEdges {
    int d = 0;
    std::vector<std::pair<int, int>> removed;
};

/// K_d with the cliques on two vertex sets removed.
struct TwoCliquesRemoved {
    int d = 0;
    std::vector<int> first;
    std::vector<int> second;
};

/// K_{m,n} as K_{m+n} minus the cliques on v1..vm and v(m+1)..v(m+n).
struct Bipartite {
    int m = 0;
    int n = 0;
};

/// K_d minus two stars rooted at v1 and v2 with k1 and k2 = d-1-k1 leaves,
/// sharing the single leaf v(k2+2). v1 keeps v3..v(d-k1), v2 keeps
/// v(k2+3)..vd.
struct Sharp {
    int d = 0;
    int k1 = 0;
};

using Variant = std::variant<CompleteK, KdMinusKh, KdMinusEdges, TwoCliquesRemoved, Bipartite, Sharp>;

struct FamilySpec {
    Variant variant;
    Rational uniform_length{1};
    /// Per-edge lengths keyed by (i, j), i < j.
    std::map<std::pair<int, int>, Rational> overrides;
};

int vertex_count(const FamilySpec& spec);
std::string vertex_name(int i);
std::string edge_name(int i, int j);

/// Removed edges (i < j), sorted.
std::vector<std::pair<int, int>> removed_edges(const FamilySpec& spec);

/// Throws InvalidSpec when a family invariant fails.
void check_spec(const FamilySpec& spec);

MetricGraph build(const FamilySpec& spec);

/// Size of the largest clique spanned by the given edges.
int max_clique_in_removed(const std::vector<std::pair<std::string, std::string>>& edges);
int max_clique_in_removed(const std::vector<std::pair<int, int>>& edges);

/// Lexicographically first maximum clique (1-based vertex indices).
std::vector<int> maximum_removed_clique(const std::vector<std::pair<int, int>>& edges);

/// Closed-form gonality from the matching theorem. Throws InvalidSpec when
/// the spec lies outside every theorem's hypotheses.
int predicted_gonality(const FamilySpec& spec);

/// Degree-predicted_gonality divisor of rank >= 1: the vertices outside a
/// maximum removed clique, or the middle vertices for Sharp.
Divisor witness_divisor(const FamilySpec& spec);

std::string describe(const FamilySpec& spec);

/// Sharp-family vertex roles.
struct SharpLayout {
    int shared_leaf = 0;             // v(k2+2)
    std::vector<int> v1_side;        // v3..v(d-k1)
    std::vector<int> v2_side;        // v(k2+3)..vd
    std::vector<int> middle() const; // v1_side followed by v2_side
};
SharpLayout sharp_layout(const Sharp& s);

/// Fixture graphs with the labels used in the two d = 8 worked examples of
/// the sharpness construction (unit lengths).
MetricGraph sharp_example_a(); // vertices v1..v7, vbar
MetricGraph sharp_example_b(); // vertices v1..v5, v7, vbar, v

/// One fixture of the case analysis behind the sharpness construction.
struct CaseFixture {
    std::string name;
    std::string box;  // which configuration of the case analysis
    MetricGraph graph;
    Divisor divisor;
    int subdivision = 1;
    /// Claimed rank >= 1 status; nullopt where the claim depends on lengths.
    std::optional<bool> rank_at_least_one;
};

/// Catalog of the case analysis for one d: graphs realising each
/// configuration and the divisor shapes built from E_k / f_k chip groups.
std::vector<CaseFixture> sharp_case_catalog(int d);

/// Third configuration with the given length on every edge at vbar other
/// than the leaf; exposes the length dependence without claiming a rank.
CaseFixture sharp_third_case(int d, const Rational& vbar_length);

} // namespace gonlab::families
