#include "gonlab/divisor.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "gonlab/error.hpp"
#include "gonlab/lattice.hpp"

namespace gonlab {

Divisor::Divisor(std::initializer_list<std::pair<PointRef, int>> terms)
{
    for (const auto& [p, c] : terms)
        add(p, c);
}

Divisor Divisor::of_vertices(const std::vector<std::string>& ids)
{
    Divisor d;
    for (const auto& id : ids)
        d.add(PointRef::vertex(id), 1);
    return d;
}

int Divisor::operator[](const PointRef& p) const
{
    auto it = terms_.find(p);
    return it == terms_.end() ? 0 : it->second;
}

void Divisor::add(const PointRef& p, int coeff)
{
    if (coeff == 0)
        return;
    auto [it, inserted] = terms_.emplace(p, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0)
            terms_.erase(it);
    }
}

int Divisor::degree() const
{
    int total = 0;
    for (const auto& [p, c] : terms_)
        total += c;
    return total;
}

bool Divisor::is_effective() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second > 0; });
}

bool Divisor::is_effective_away_from(const PointRef& q) const
{
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const auto& t) { return t.second > 0 || t.first == q; });
}

int Divisor::positive_degree() const
{
    int total = 0;
    for (const auto& [p, c] : terms_)
        total += std::max(c, 0);
    return total;
}

std::vector<PointRef> Divisor::support() const
{
    std::vector<PointRef> out;
    for (const auto& [p, c] : terms_)
        out.push_back(p);
    return out;
}

Divisor& Divisor::operator+=(const Divisor& other)
{
    for (const auto& [p, c] : other.terms_)
        add(p, c);
    return *this;
}

Divisor& Divisor::operator-=(const Divisor& other)
{
    for (const auto& [p, c] : other.terms_)
        add(p, -c);
    return *this;
}

Divisor operator*(int k, const Divisor& d)
{
    Divisor out;
    for (const auto& [p, c] : d.terms_)
        out.add(p, k * c);
    return out;
}

std::string to_string(const Divisor& d)
{
    if (d.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [p, c] : d.terms()) {
        if (!first)
            out << (c < 0 ? " - " : " + ");
        else if (c < 0)
            out << "-";
        first = false;
        auto magnitude = c < 0 ? -c : c;
        if (magnitude != 1)
            out << magnitude;
        out << "(" << to_string(p) << ")";
    }
    return out.str();
}

void check_divisor(const MetricGraph& g, const Divisor& d)
{
    for (const auto& p : d.support()) {
        try {
            check_point(g, p);
        } catch (const InvalidGraph& e) {
            throw InvalidDivisor(e.what());
        }
    }
}

namespace {

Rational profile_delta(const EdgeProfile& profile)
{
    Rational total(0);
    for (std::size_t i = 0; i < profile.slopes.size(); ++i)
        total += Rational(profile.slopes[i]) * (profile.breaks[i + 1] - profile.breaks[i]);
    return total;
}

} // namespace

RationalFunction RationalFunction::create(const MetricGraph& g, std::map<std::string, EdgeProfile> profiles)
{
    require_valid(g);
    for (const auto& [id, profile] : profiles) {
        const auto& e = g.edge(id);
        if (e.length.is_infinite())
            throw InvalidFunction("rational functions are only supported on finite edges ('" + id + "')");
        const auto& b = profile.breaks;
        if (b.size() < 2 || profile.slopes.size() != b.size() - 1)
            throw InvalidFunction("edge '" + id + "': need k+1 breakpoints for k slopes");
        if (b.front() != Rational(0) || b.back() != e.length.value())
            throw InvalidFunction("edge '" + id + "': breakpoints must span [0, length]");
        for (std::size_t i = 1; i < b.size(); ++i)
            if (!(b[i - 1] < b[i]))
                throw InvalidFunction("edge '" + id + "': breakpoints must increase strictly");
    }

    std::map<std::size_t, Rational> delta;
    for (const auto& [id, profile] : profiles)
        delta[g.edge_index(id)] = profile_delta(profile);

    RationalFunction f;
    f.profiles_ = std::move(profiles);
    auto anchor = g.sorted_vertices().front();
    std::vector<std::optional<Rational>> value(g.vertex_count());
    value[anchor] = Rational(0);
    std::queue<std::size_t> queue;
    queue.push(anchor);
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop();
        for (auto e : g.incident(v)) {
            const auto& edge = g.edge(e);
            Rational d = delta.count(e) ? delta[e] : Rational(0);
            auto w = edge.other(v);
            Rational expected = edge.first == v ? *value[v] + d : *value[v] - d;
            if (!value[w]) {
                value[w] = expected;
                queue.push(w);
            } else if (*value[w] != expected) {
                throw InvalidFunction("function is discontinuous at vertex '" + g.vertex_id(w) + "'");
            }
        }
    }
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        f.vertex_values_.emplace(g.vertex_id(v), *value[v]);
    return f;
}

RationalFunction RationalFunction::from_samples(
    const MetricGraph& g, const std::map<std::string, std::vector<std::pair<Rational, Rational>>>& samples)
{
    std::map<std::string, EdgeProfile> profiles;
    std::map<std::string, Rational> at_vertex;
    auto pin = [&](const std::string& vertex, const Rational& value) {
        auto [it, inserted] = at_vertex.emplace(vertex, value);
        if (!inserted && it->second != value)
            throw InvalidFunction("samples disagree at vertex '" + vertex + "'");
    };

    for (const auto& [id, raw] : samples) {
        const auto& e = g.edge(id);
        auto points = raw;
        std::sort(points.begin(), points.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (points.size() < 2)
            throw InvalidFunction("edge '" + id + "': need samples at both ends");
        EdgeProfile profile;
        profile.breaks.push_back(points.front().first);
        for (std::size_t i = 1; i < points.size(); ++i) {
            Rational run = points[i].first - points[i - 1].first;
            if (run == Rational(0))
                throw InvalidFunction("edge '" + id + "': repeated sample offset");
            Rational slope = (points[i].second - points[i - 1].second) / run;
            if (!is_integer(slope))
                throw InvalidFunction("edge '" + id + "': non-integer slope " + to_string(slope));
            if (!profile.slopes.empty() && profile.slopes.back() == slope.numerator())
                profile.breaks.back() = points[i].first;
            else {
                profile.slopes.push_back(slope.numerator());
                profile.breaks.push_back(points[i].first);
            }
        }
        pin(g.vertex_id(e.first), points.front().second);
        pin(g.vertex_id(e.second), points.back().second);
        profiles.emplace(id, std::move(profile));
    }
    return create(g, std::move(profiles));
}

Rational RationalFunction::value_at(const MetricGraph& g, const PointRef& p) const
{
    check_point(g, p);
    if (p.is_vertex())
        return vertex_values_.at(p.id);
    const auto& e = g.edge(p.id);
    Rational value = vertex_values_.at(g.vertex_id(e.first));
    auto it = profiles_.find(p.id);
    if (it == profiles_.end())
        return value;
    const auto& profile = it->second;
    for (std::size_t i = 0; i < profile.slopes.size(); ++i) {
        Rational end = std::min(profile.breaks[i + 1], p.offset);
        if (end <= profile.breaks[i])
            break;
        value += Rational(profile.slopes[i]) * (end - profile.breaks[i]);
    }
    return value;
}

RationalFunction chip_firing_function(const MetricGraph& g, const ClosedSet& a, const Rational& t)
{
    require_valid(g);
    require_finite(g);
    if (a.vertices.empty())
        throw InvalidFunction("closed set must contain a vertex");
    if (t <= Rational(0))
        throw InvalidFunction("firing time must be positive");
    for (const auto& id : a.edges) {
        const auto& e = g.edge(id);
        if (!a.vertices.count(g.vertex_id(e.first)) || !a.vertices.count(g.vertex_id(e.second)))
            throw InvalidFunction("edge '" + id + "' lies in the set but an endpoint does not");
    }

    // distances from the set, exact
    const auto n = g.vertex_count();
    std::vector<std::optional<Rational>> dist(n);
    std::vector<bool> done(n, false);
    for (const auto& id : a.vertices)
        dist[g.vertex(id)] = Rational(0);
    for (std::size_t round = 0; round < n; ++round) {
        std::optional<std::size_t> best;
        for (std::size_t v = 0; v < n; ++v)
            if (!done[v] && dist[v] && (!best || *dist[v] < *dist[*best]))
                best = v;
        if (!best)
            break;
        done[*best] = true;
        for (auto e : g.incident(*best)) {
            auto w = g.edge(e).other(*best);
            Rational through = *dist[*best] + g.edge(e).length.value();
            if (!dist[w] || through < *dist[w])
                dist[w] = through;
        }
    }

    std::map<std::string, std::vector<std::pair<Rational, Rational>>> samples;
    for (const auto& e : g.edges()) {
        const Rational length = e.length.value();
        if (a.edges.count(e.id)) {
            samples[e.id] = {{Rational(0), t}, {length, t}};
            continue;
        }
        const Rational da = *dist[e.first];
        const Rational db = *dist[e.second];
        auto value = [&](const Rational& x) {
            Rational d = std::min(x + da, length - x + db);
            return std::max(t - d, Rational(0));
        };
        std::vector<Rational> cuts{Rational(0), length, (length + db - da) / Rational(2), t - da,
                                   length - (t - db)};
        std::vector<std::pair<Rational, Rational>> pts;
        for (const auto& x : cuts)
            if (x >= Rational(0) && x <= length)
                pts.emplace_back(x, value(x));
        std::sort(pts.begin(), pts.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
        pts.erase(std::unique(pts.begin(), pts.end(),
                              [](const auto& p, const auto& q) { return p.first == q.first; }),
                  pts.end());
        samples[e.id] = std::move(pts);
    }
    return RationalFunction::from_samples(g, samples);
}

Divisor canonical_divisor(const MetricGraph& g)
{
    require_valid(g);
    require_finite(g);
    Divisor k;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        k.add(PointRef::vertex(g.vertex_id(v)), int(g.valence(v)) - 2);
    return k;
}

Divisor principal_divisor(const MetricGraph& g, const RationalFunction& f)
{
    Divisor d;
    for (const auto& [id, profile] : f.profiles()) {
        const auto& e = g.edge(id);
        d.add(PointRef::vertex(g.vertex_id(e.first)), int(profile.slopes.front()));
        d.add(PointRef::vertex(g.vertex_id(e.second)), -int(profile.slopes.back()));
        for (std::size_t i = 1; i < profile.slopes.size(); ++i)
            d.add(PointRef::interior(id, profile.breaks[i]),
                  int(profile.slopes[i] - profile.slopes[i - 1]));
    }
    return d;
}

bool linearly_equivalent(const MetricGraph& g, const Divisor& a, const Divisor& b,
                         std::optional<int> subdivision)
{
    check_divisor(g, a);
    check_divisor(g, b);
    if (a.degree() != b.degree())
        return false;
    int s = resolve_subdivision(g, {&a, &b}, subdivision);
    auto model = LatticeModel::build(g, s);
    auto x = model.to_chips(a);
    auto y = model.to_chips(b);
    kernels::reduce(model, x, 0);
    kernels::reduce(model, y, 0);
    return x == y;
}

} // namespace gonlab
