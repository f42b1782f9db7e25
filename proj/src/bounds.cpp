#include "gonlab/bounds.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <queue>

#include "gonlab/error.hpp"

namespace gonlab {

namespace {

// Unit-capacity max flow on the vertex-split graph: vertex x becomes
// in = 2x, out = 2x + 1 joined by capacity 1 (unbounded at the terminals).
int split_max_flow(const MetricGraph& g, std::size_t s, std::size_t t)
{
    const std::size_t n = 2 * g.vertex_count();
    struct Arc {
        std::size_t to;
        int cap;
    };
    std::vector<Arc> arcs;
    std::vector<std::vector<std::size_t>> out(n);
    auto add = [&](std::size_t a, std::size_t b, int cap) {
        out[a].push_back(arcs.size());
        arcs.push_back({b, cap});
        out[b].push_back(arcs.size());
        arcs.push_back({a, 0});
    };
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        add(2 * v, 2 * v + 1, v == s || v == t ? INT_MAX / 2 : 1);
    for (const auto& e : g.edges()) {
        add(2 * e.first + 1, 2 * e.second, 1);
        add(2 * e.second + 1, 2 * e.first, 1);
    }
    const std::size_t source = 2 * s + 1, sink = 2 * t;
    int flow = 0;
    while (true) {
        std::vector<std::size_t> via(n, SIZE_MAX);
        std::vector<char> seen(n, 0);
        std::queue<std::size_t> queue;
        queue.push(source);
        seen[source] = 1;
        while (!queue.empty() && !seen[sink]) {
            auto x = queue.front();
            queue.pop();
            for (auto a : out[x])
                if (arcs[a].cap > 0 && !seen[arcs[a].to]) {
                    seen[arcs[a].to] = 1;
                    via[arcs[a].to] = a;
                    queue.push(arcs[a].to);
                }
        }
        if (!seen[sink])
            return flow;
        for (auto x = sink; x != source; x = arcs[via[x] ^ 1].to) {
            arcs[via[x]].cap -= 1;
            arcs[via[x] ^ 1].cap += 1;
        }
        ++flow;
    }
}

} // namespace

int disjoint_paths(const MetricGraph& g, const std::string& u, const std::string& v)
{
    auto a = g.vertex(u), b = g.vertex(v);
    if (a == b)
        throw InvalidGraph("disjoint paths need two distinct vertices");
    return split_max_flow(g, a, b);
}

PathBound disjoint_path_bound(const MetricGraph& g)
{
    require_valid(g);
    const auto order = g.sorted_vertices();
    const std::size_t n = order.size();
    if (n > 20)
        throw BudgetExceeded("disjoint path bound is exhaustive and limited to 20 vertices");
    std::vector<std::vector<int>> kappa(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            kappa[i][j] = kappa[j][i] = split_max_flow(g, order[i], order[j]);

    PathBound best{1, {g.vertex_id(order.front())}};
    std::vector<std::size_t> chosen;
    // extend in increasing index order; a set of size k needs pairwise kappa >= k - 1,
    // so candidates must already have kappa >= best size with every member
    std::function<void(std::size_t, int)> extend = [&](std::size_t from, int target) {
        if (int(chosen.size()) == target) {
            bool ok = true;
            for (std::size_t i = 0; ok && i < chosen.size(); ++i)
                for (std::size_t j = i + 1; ok && j < chosen.size(); ++j)
                    ok = kappa[chosen[i]][chosen[j]] >= target - 1;
            if (ok && target > best.n) {
                best.n = target;
                best.vertices.clear();
                for (auto c : chosen)
                    best.vertices.push_back(g.vertex_id(order[c]));
            }
            return;
        }
        for (std::size_t i = from; i < n && best.n < target; ++i) {
            bool ok = std::all_of(chosen.begin(), chosen.end(),
                                  [&](std::size_t c) { return kappa[c][i] >= target - 1; });
            if (!ok)
                continue;
            chosen.push_back(i);
            extend(i + 1, target);
            chosen.pop_back();
        }
    };
    for (int target = int(n); target >= 2 && best.n < target; --target)
        extend(0, target);
    return best;
}

} // namespace gonlab
