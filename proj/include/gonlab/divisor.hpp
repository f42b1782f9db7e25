#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gonlab/graph.hpp"

namespace gonlab {

/// Finite formal integer combination of points. Zero coefficients are never
/// stored, so two divisors compare equal iff they agree pointwise.
class Divisor {
public:
    Divisor() = default;
    Divisor(std::initializer_list<std::pair<PointRef, int>> terms);

    /// (v_1) + (v_2) + ... for the given vertex ids.
    static Divisor of_vertices(const std::vector<std::string>& ids);

    int operator[](const PointRef& p) const;
    void add(const PointRef& p, int coeff);

    int degree() const;
    bool is_effective() const;
    /// Effective on every point other than q.
    bool is_effective_away_from(const PointRef& q) const;
    int positive_degree() const;
    std::vector<PointRef> support() const;
    const std::map<PointRef, int>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    Divisor& operator+=(const Divisor& other);
    Divisor& operator-=(const Divisor& other);
    friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
    friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
    friend Divisor operator*(int k, const Divisor& d);
    friend bool operator==(const Divisor& a, const Divisor& b) { return a.terms_ == b.terms_; }

private:
    std::map<PointRef, int> terms_;
};

std::string to_string(const Divisor& d);

/// Throws InvalidDivisor if some support point is not a point of g.
void check_divisor(const MetricGraph& g, const Divisor& d);

/// Piecewise-linear data along one edge, oriented from the first endpoint:
/// breaks run 0 = b_0 < b_1 < ... < b_k = length, slopes[i] on (b_i, b_{i+1}).
struct EdgeProfile {
    std::vector<Rational> breaks;
    std::vector<std::int64_t> slopes;
};

/// Continuous piecewise-linear function with integer slopes, normalized so
/// the lexicographically least vertex has value 0. Edges without a profile
/// are constant.
class RationalFunction {
public:
    /// Validates breakpoints and continuity around every cycle.
    static RationalFunction create(const MetricGraph& g, std::map<std::string, EdgeProfile> profiles);

    /// Builds f from values at sample offsets on each edge (offsets must
    /// include 0 and the length). Non-integer slopes are rejected.
    static RationalFunction from_samples(
        const MetricGraph& g,
        const std::map<std::string, std::vector<std::pair<Rational, Rational>>>& samples);

    static RationalFunction constant(const MetricGraph& g) { return create(g, {}); }

    Rational value_at(const MetricGraph& g, const PointRef& p) const;
    Rational vertex_value(const std::string& vertex) const { return vertex_values_.at(vertex); }
    const std::map<std::string, EdgeProfile>& profiles() const { return profiles_; }

private:
    std::map<std::string, EdgeProfile> profiles_;
    std::map<std::string, Rational> vertex_values_;
};

/// A closed subset given as a set of vertices together with the edges
/// (both of whose endpoints must be listed) that it contains entirely.
struct ClosedSet {
    std::set<std::string> vertices;
    std::set<std::string> edges;
};

/// f = max(t - dist(x, A), 0): adding div(f) fires A for time t.
RationalFunction chip_firing_function(const MetricGraph& g, const ClosedSet& a, const Rational& t);

/// Coefficient val(p) - 2 at every vertex of valence != 2.
Divisor canonical_divisor(const MetricGraph& g);

/// Sum of outgoing slopes at every point.
Divisor principal_divisor(const MetricGraph& g, const RationalFunction& f);

/// Compares q-reduced forms for the lexicographically least vertex q.
bool linearly_equivalent(const MetricGraph& g, const Divisor& a, const Divisor& b,
                         std::optional<int> subdivision = std::nullopt);

} // namespace gonlab
