#include "gonlab/sampling.hpp"

#include <algorithm>
#include <string>

namespace gonlab::sampling {

MetricGraph random_graph(std::mt19937_64& rng, int vertices, int extra)
{
    static const Rational lengths[] = {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)};
    std::uniform_int_distribution<int> pick_length(0, 3);
    MetricGraph g;
    for (int i = 1; i <= vertices; ++i)
        g.add_vertex("v" + std::to_string(i));
    int next = 1;
    auto add = [&](int a, int b) {
        g.add_edge("e" + std::to_string(next++), "v" + std::to_string(a), "v" + std::to_string(b),
                   Length(lengths[pick_length(rng)]));
    };
    for (int i = 2; i <= vertices; ++i)
        add(std::uniform_int_distribution<int>(1, i - 1)(rng), i);
    for (int k = 0; k < extra && vertices > 1; ++k) {
        int a = std::uniform_int_distribution<int>(1, vertices)(rng);
        int b = std::uniform_int_distribution<int>(1, vertices - 1)(rng);
        if (b >= a)
            ++b;
        add(a, b);
    }
    return g;
}

Divisor random_divisor(std::mt19937_64& rng, const MetricGraph& g, int terms, int lo, int hi,
                       bool midpoints)
{
    std::vector<PointRef> points;
    for (const auto& v : g.vertex_ids())
        points.push_back(PointRef::vertex(v));
    if (midpoints)
        for (const auto& e : g.edges())
            if (!e.length.is_infinite())
                points.push_back(PointRef::interior(e.id, e.length.value() / Rational(2)));
    std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
    std::uniform_int_distribution<int> coeff(lo, hi);
    Divisor d;
    for (int k = 0; k < terms; ++k)
        d.add(points[pick(rng)], coeff(rng));
    return d;
}

std::vector<std::pair<int, int>> random_removal(std::mt19937_64& rng, int d, int count)
{
    std::vector<std::pair<int, int>> all;
    for (int i = 1; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j)
            all.emplace_back(i, j);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(count);
    std::sort(all.begin(), all.end());
    return all;
}

Divisor random_principal(std::mt19937_64& rng, const MetricGraph& g, int count)
{
    const auto& ids = g.vertex_ids();
    Divisor out;
    if (ids.size() < 2)
        return out;
    for (int k = 0; k < count; ++k) {
        ClosedSet a;
        while (a.vertices.empty() || a.vertices.size() == ids.size()) {
            a.vertices.clear();
            for (const auto& v : ids)
                if (std::bernoulli_distribution(0.5)(rng))
                    a.vertices.insert(v);
        }
        for (const auto& e : g.edges())
            if (a.vertices.count(g.vertex_id(e.first)) && a.vertices.count(g.vertex_id(e.second)))
                a.edges.insert(e.id);
        Rational t = std::bernoulli_distribution(0.5)(rng) ? Rational(1, 2) : Rational(1);
        out += principal_divisor(g, chip_firing_function(g, a, t));
    }
    return out;
}

} // namespace gonlab::sampling
