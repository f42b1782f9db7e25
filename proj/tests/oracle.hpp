#pragma once

// Textbook finite-graph algorithms used as independent oracles. They work on
// unit-length graphs with vertex-supported divisors and share no code with
// the lattice kernels.

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include "gonlab/divisor.hpp"
#include "gonlab/graph.hpp"

namespace gonlab::oracle {

struct Multigraph {
    std::vector<std::string> names;
    std::vector<std::vector<int>> mult;  // edge multiplicities
    std::vector<int> degree;

    int index(const std::string& v) const
    {
        return int(std::find(names.begin(), names.end(), v) - names.begin());
    }
};

inline Multigraph unit_multigraph(const MetricGraph& g)
{
    Multigraph m;
    m.names = g.vertex_ids();
    std::sort(m.names.begin(), m.names.end());
    const int n = int(m.names.size());
    m.mult.assign(n, std::vector<int>(n, 0));
    m.degree.assign(n, 0);
    for (const auto& e : g.edges()) {
        if (!(e.length == Length(1)))
            throw std::invalid_argument("oracle needs unit lengths");
        int a = m.index(g.vertex_id(e.first)), b = m.index(g.vertex_id(e.second));
        ++m.mult[a][b];
        ++m.mult[b][a];
        ++m.degree[a];
        ++m.degree[b];
    }
    return m;
}

inline std::vector<int> chips_of(const Multigraph& m, const Divisor& d)
{
    std::vector<int> c(m.names.size(), 0);
    for (const auto& [p, k] : d.terms()) {
        if (!p.is_vertex())
            throw std::invalid_argument("oracle needs vertex-supported divisors");
        c[m.index(p.id)] += k;
    }
    return c;
}

/// Greedy dollar game: borrow at some vertex in debt until out of debt, or
/// until every vertex has borrowed (then no effective representative exists).
inline bool winnable(const Multigraph& m, std::vector<int> c)
{
    const int n = int(c.size());
    std::vector<char> borrowed(n, 0);
    int borrowers = 0;
    while (true) {
        auto it = std::find_if(c.begin(), c.end(), [](int x) { return x < 0; });
        if (it == c.end())
            return true;
        int v = int(it - c.begin());
        c[v] += m.degree[v];
        for (int w = 0; w < n; ++w)
            c[w] -= m.mult[v][w];
        if (!borrowed[v]) {
            borrowed[v] = 1;
            if (++borrowers == n)
                return false;
        }
    }
}

inline bool winnable(const MetricGraph& g, const Divisor& d)
{
    auto m = unit_multigraph(g);
    return winnable(m, chips_of(m, d));
}

/// D1 ~ D2 iff the degree-0 divisor D1 - D2 is winnable.
inline bool equivalent(const MetricGraph& g, const Divisor& a, const Divisor& b)
{
    return a.degree() == b.degree() && winnable(g, a - b);
}

/// Rank from the definition with E ranging over vertex multisets.
inline int brute_rank(const MetricGraph& g, const Divisor& d)
{
    auto m = unit_multigraph(g);
    auto base = chips_of(m, d);
    if (!winnable(m, base))
        return -1;
    const int n = int(base.size());
    for (int r = 1;; ++r) {
        std::vector<int> pick(r, 0);
        bool all = true;
        std::function<void(int, int)> rec = [&](int pos, int from) {
            if (!all)
                return;
            if (pos == r) {
                auto c = base;
                for (int v : pick)
                    --c[v];
                all = winnable(m, c);
                return;
            }
            for (int v = from; v < n && all; ++v) {
                pick[pos] = v;
                rec(pos + 1, v);
            }
        };
        rec(0, 0);
        if (!all)
            return r - 1;
    }
}

/// Dhar burning on the multigraph: the set of vertices that never burn.
inline std::vector<std::string> unburnt(const MetricGraph& g, const Divisor& d, const std::string& q)
{
    auto m = unit_multigraph(g);
    auto c = chips_of(m, d);
    const int n = int(c.size());
    std::vector<char> burnt(n, 0);
    burnt[m.index(q)] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            if (burnt[v])
                continue;
            int fire = 0;
            for (int w = 0; w < n; ++w)
                if (burnt[w])
                    fire += m.mult[v][w];
            if (fire > c[v]) {
                burnt[v] = 1;
                changed = true;
            }
        }
    }
    std::vector<std::string> out;
    for (int v = 0; v < n; ++v)
        if (!burnt[v])
            out.push_back(m.names[v]);
    return out;
}

inline bool q_reduced(const MetricGraph& g, const Divisor& d, const std::string& q)
{
    for (const auto& [p, k] : d.terms())
        if (k < 0 && !(p.is_vertex() && p.id == q))
            return false;
    return unburnt(g, d, q).empty();
}

} // namespace gonlab::oracle
