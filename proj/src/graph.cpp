#include "gonlab/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

#include "gonlab/error.hpp"

namespace gonlab {

std::size_t MetricGraph::add_vertex(std::string id)
{
    if (vertex_index_.count(id))
        throw InvalidGraph("duplicate vertex id '" + id + "'");
    auto index = vertices_.size();
    vertex_index_.emplace(id, index);
    vertices_.push_back(std::move(id));
    incidence_.emplace_back();
    return index;
}

std::size_t MetricGraph::add_edge(std::string id, const std::string& from, const std::string& to,
                                  Length length)
{
    if (edge_index_.count(id))
        throw InvalidGraph("duplicate edge id '" + id + "'");
    auto a = vertex(from);
    auto b = vertex(to);
    auto index = edges_.size();
    edge_index_.emplace(id, index);
    edges_.push_back(Edge{std::move(id), a, b, length});
    incidence_[a].push_back(index);
    incidence_[b].push_back(index);
    return index;
}

std::optional<std::size_t> MetricGraph::find_vertex(const std::string& id) const
{
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end())
        return std::nullopt;
    return it->second;
}

std::size_t MetricGraph::vertex(const std::string& id) const
{
    auto v = find_vertex(id);
    if (!v)
        throw InvalidGraph("unknown vertex '" + id + "'");
    return *v;
}

std::optional<std::size_t> MetricGraph::find_edge(const std::string& id) const
{
    auto it = edge_index_.find(id);
    if (it == edge_index_.end())
        return std::nullopt;
    return it->second;
}

std::size_t MetricGraph::edge_index(const std::string& id) const
{
    auto e = find_edge(id);
    if (!e)
        throw InvalidGraph("unknown edge '" + id + "'");
    return *e;
}

const Edge& MetricGraph::edge(const std::string& id) const { return edges_[edge_index(id)]; }

bool MetricGraph::has_infinite_edges() const
{
    return std::any_of(edges_.begin(), edges_.end(),
                       [](const Edge& e) { return e.length.is_infinite(); });
}

std::vector<std::size_t> MetricGraph::sorted_vertices() const
{
    std::vector<std::size_t> order(vertices_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](auto a, auto b) { return vertices_[a] < vertices_[b]; });
    return order;
}

std::vector<std::size_t> MetricGraph::sorted_edges() const
{
    std::vector<std::size_t> order(edges_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](auto a, auto b) { return edges_[a].id < edges_[b].id; });
    return order;
}

bool operator==(const MetricGraph& a, const MetricGraph& b)
{
    if (a.vertices_ != b.vertices_ || a.edges_.size() != b.edges_.size())
        return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i) {
        const auto& x = a.edges_[i];
        const auto& y = b.edges_[i];
        if (x.id != y.id || a.vertices_[x.first] != b.vertices_[y.first] ||
            a.vertices_[x.second] != b.vertices_[y.second] || !(x.length == y.length))
            return false;
    }
    return true;
}

std::string to_string(const PointRef& p)
{
    if (p.is_vertex())
        return p.id;
    return p.id + "@" + to_string(p.offset);
}

void check_point(const MetricGraph& g, const PointRef& p)
{
    if (p.is_vertex()) {
        g.vertex(p.id);
        return;
    }
    const auto& e = g.edge(p.id);
    if (e.length.is_infinite())
        throw InvalidGraph("point on infinite edge '" + p.id + "'");
    if (p.offset <= Rational(0) || p.offset >= e.length.value())
        throw InvalidGraph("offset " + to_string(p.offset) + " not strictly inside edge '" + p.id +
                           "'");
}

std::vector<TangentDirection> tangent_directions(const MetricGraph& g, const PointRef& p)
{
    check_point(g, p);
    std::vector<TangentDirection> out;
    if (!p.is_vertex()) {
        out.push_back({p, p.id, false});
        out.push_back({p, p.id, true});
        return out;
    }
    auto v = g.vertex(p.id);
    for (auto e : g.incident(v)) {
        const auto& edge = g.edge(e);
        // a loop contributes its two ends
        bool toward_second = edge.first == v;
        if (edge.first == v && edge.second == v) {
            out.push_back({p, edge.id, true});
            out.push_back({p, edge.id, false});
            continue;
        }
        out.push_back({p, edge.id, toward_second});
    }
    // loops were pushed twice via incidence; drop the duplicate pairs
    std::vector<TangentDirection> unique;
    for (auto& d : out)
        if (std::count(unique.begin(), unique.end(), d) == 0)
            unique.push_back(d);
    return unique;
}

std::size_t valence(const MetricGraph& g, const PointRef& p)
{
    check_point(g, p);
    return p.is_vertex() ? g.valence(g.vertex(p.id)) : 2;
}

std::string Diagnostics::summary() const
{
    std::ostringstream out;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i)
            out << "; ";
        out << violations[i].kind << " (" << violations[i].where << "): " << violations[i].message;
    }
    return out.str();
}

Diagnostics validate(const MetricGraph& g)
{
    Diagnostics diag;
    auto report = [&](std::string kind, std::string where, std::string message) {
        diag.violations.push_back({std::move(kind), std::move(where), std::move(message)});
    };

    if (g.vertex_count() == 0) {
        report("empty", "", "graph has no vertices");
        return diag;
    }

    for (const auto& e : g.edges()) {
        if (e.first == e.second)
            report("loop", e.id, "loop edges are not allowed");
        if (e.length.is_finite() && e.length.value() <= Rational(0))
            report("nonpositive length", e.id, "length " + to_string(e.length.value()));
        if (e.length.is_infinite()) {
            auto leaves = int(g.valence(e.first) == 1) + int(g.valence(e.second) == 1);
            if (leaves != 1)
                report("infinite edge", e.id, "needs exactly one endpoint of valence 1");
        }
    }

    std::vector<bool> seen(g.vertex_count(), false);
    std::queue<std::size_t> queue;
    queue.push(0);
    seen[0] = true;
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop();
        for (auto e : g.incident(v)) {
            auto w = g.edge(e).other(v);
            if (!seen[w]) {
                seen[w] = true;
                queue.push(w);
            }
        }
    }
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (!seen[v])
            report("disconnected", g.vertex_id(v), "not reachable from " + g.vertex_id(0));
    return diag;
}

void require_valid(const MetricGraph& g)
{
    auto diag = validate(g);
    if (!diag.ok())
        throw InvalidGraph("invalid graph: " + diag.summary());
}

void require_finite(const MetricGraph& g)
{
    for (const auto& e : g.edges())
        if (e.length.is_infinite())
            throw InvalidGraph("edge '" + e.id + "' has infinite length");
}

int genus(const MetricGraph& g)
{
    require_valid(g);
    return int(g.edge_count()) - int(g.vertex_count()) + 1;
}

Subdivision subdivide(const MetricGraph& g, int s)
{
    if (s < 1)
        throw InvalidGraph("subdivision factor must be positive");
    require_finite(g);

    Subdivision out;
    for (const auto& id : g.vertex_ids()) {
        out.graph.add_vertex(id);
        out.lattice.emplace(PointRef::vertex(id), id);
    }
    if (s == 1) {
        for (const auto& e : g.edges())
            out.graph.add_edge(e.id, g.vertex_id(e.first), g.vertex_id(e.second), e.length);
        return out;
    }
    for (const auto& e : g.edges()) {
        Rational piece = e.length.value() / Rational(s);
        std::string previous = g.vertex_id(e.first);
        for (int k = 1; k <= s; ++k) {
            std::string next;
            if (k == s) {
                next = g.vertex_id(e.second);
            } else {
                next = e.id + "@" + std::to_string(k);
                out.graph.add_vertex(next);
                out.lattice.emplace(PointRef::interior(e.id, piece * Rational(k)), next);
            }
            out.graph.add_edge(e.id + "#" + std::to_string(k), previous, next, Length(piece));
            previous = next;
        }
    }
    return out;
}

Integerized integerize(const MetricGraph& g)
{
    require_finite(g);
    std::int64_t scale = 1;
    for (const auto& e : g.edges())
        scale = lcm_of(scale, e.length.value().denominator());

    Integerized out;
    out.scale = Rational(scale);
    for (const auto& id : g.vertex_ids())
        out.graph.add_vertex(id);
    for (const auto& e : g.edges())
        out.graph.add_edge(e.id, g.vertex_id(e.first), g.vertex_id(e.second),
                           Length(e.length.value() * out.scale));
    return out;
}

} // namespace gonlab
