#include "gonlab/lattice.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

#include "gonlab/error.hpp"

namespace gonlab {

namespace {

constexpr std::size_t max_lattice_size = 2'000'000;

} // namespace

LatticeModel LatticeModel::build(const MetricGraph& g, int subdivision)
{
    if (subdivision < 1)
        throw InvalidGraph("subdivision must be a positive integer");
    require_finite(g);
    require_valid(g);

    auto scaled = integerize(g);
    const auto scale = scaled.scale.numerator();

    LatticeModel m;
    m.subdivision_ = subdivision;
    m.scale_ = scaled.scale;

    for (auto v : g.sorted_vertices()) {
        m.vertex_lattice_.emplace(g.vertex_id(v), int(m.points_.size()));
        m.points_.push_back(PointRef::vertex(g.vertex_id(v)));
    }
    m.original_vertices_ = m.points_.size();

    std::vector<std::pair<int, int>> links;
    for (auto e : g.sorted_edges()) {
        const auto& edge = scaled.graph.edge(e);
        const auto steps = edge.length.value().numerator() * subdivision;
        if (m.points_.size() + std::size_t(std::max<std::int64_t>(steps - 1, 0)) > max_lattice_size)
            throw BudgetExceeded("lattice model would exceed " + std::to_string(max_lattice_size) +
                                 " vertices");
        EdgeRun run;
        run.steps = steps;
        run.first_interior = int(m.points_.size());
        run.step_length = Rational(1, scale * subdivision);

        int previous = m.vertex_lattice_.at(g.vertex_id(edge.first));
        for (std::int64_t k = 1; k < steps; ++k) {
            int next = int(m.points_.size());
            m.points_.push_back(PointRef::interior(edge.id, run.step_length * Rational(k)));
            links.emplace_back(previous, next);
            previous = next;
        }
        links.emplace_back(previous, m.vertex_lattice_.at(g.vertex_id(edge.second)));
        m.runs_.emplace(edge.id, run);
    }

    std::vector<int> degree(m.points_.size(), 0);
    for (auto [a, b] : links) {
        ++degree[a];
        ++degree[b];
    }
    m.offsets_.assign(m.points_.size() + 1, 0);
    for (std::size_t v = 0; v < degree.size(); ++v)
        m.offsets_[v + 1] = m.offsets_[v] + degree[v];
    m.neighbors_.assign(m.offsets_.back(), 0);
    std::vector<int> fill(m.offsets_.begin(), m.offsets_.end() - 1);
    for (auto [a, b] : links) {
        m.neighbors_[fill[a]++] = b;
        m.neighbors_[fill[b]++] = a;
    }
    return m;
}

std::optional<int> LatticeModel::find(const PointRef& p) const
{
    if (p.is_vertex()) {
        auto it = vertex_lattice_.find(p.id);
        if (it == vertex_lattice_.end())
            return std::nullopt;
        return it->second;
    }
    auto it = runs_.find(p.id);
    if (it == runs_.end())
        return std::nullopt;
    const auto& run = it->second;
    Rational k = p.offset / run.step_length;
    if (!is_integer(k) || k.numerator() <= 0 || k.numerator() >= run.steps)
        return std::nullopt;
    return run.first_interior + int(k.numerator() - 1);
}

int LatticeModel::index_of(const PointRef& p) const
{
    auto v = find(p);
    if (!v)
        throw NotLatticeSupported("point " + to_string(p) + " is not on the lattice at subdivision " +
                                  std::to_string(subdivision_));
    return *v;
}

ChipVector LatticeModel::to_chips(const Divisor& d) const
{
    ChipVector chips(size(), 0);
    for (const auto& [p, c] : d.terms())
        chips[index_of(p)] += c;
    return chips;
}

Divisor LatticeModel::to_divisor(std::span<const int> chips) const
{
    Divisor d;
    for (std::size_t v = 0; v < chips.size(); ++v)
        if (chips[v] != 0)
            d.add(points_[v], chips[v]);
    return d;
}

int minimal_subdivision(const MetricGraph& g, const std::vector<PointRef>& points)
{
    require_finite(g);
    std::int64_t scale = 1;
    for (const auto& e : g.edges())
        scale = lcm_of(scale, e.length.value().denominator());
    std::int64_t s = 1;
    for (const auto& p : points) {
        check_point(g, p);
        if (p.is_vertex())
            continue;
        Rational scaled = p.offset * Rational(scale);
        s = lcm_of(s, scaled.denominator());
    }
    if (s > std::numeric_limits<int>::max())
        throw BudgetExceeded("required subdivision is too large");
    return int(s);
}

int minimal_subdivision(const MetricGraph& g, const Divisor& d)
{
    return minimal_subdivision(g, d.support());
}

int resolve_subdivision(const MetricGraph& g, const std::vector<const Divisor*>& divisors,
                        std::optional<int> requested)
{
    std::vector<PointRef> points;
    for (const auto* d : divisors)
        for (const auto& p : d->support())
            points.push_back(p);
    int needed = minimal_subdivision(g, points);
    if (!requested)
        return needed;
    if (*requested < 1)
        throw InvalidGraph("subdivision must be a positive integer");
    if (*requested % needed != 0)
        throw NotLatticeSupported("divisor support needs a subdivision divisible by " +
                                  std::to_string(needed) + ", got " + std::to_string(*requested));
    return *requested;
}

namespace kernels {

std::vector<char> burn(const LatticeModel& m, std::span<const int> chips, int q, std::vector<int>* order)
{
    const auto n = m.size();
    std::vector<char> burnt(n, 0);
    std::vector<int> fire(n, 0);
    std::vector<int> queue;
    queue.reserve(n);
    queue.push_back(q);
    burnt[q] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        for (int w : m.neighbors(v)) {
            if (burnt[w])
                continue;
            if (++fire[w] > chips[w]) {
                burnt[w] = 1;
                queue.push_back(w);
            }
        }
    }
    if (order)
        *order = std::move(queue);
    return burnt;
}

void collect_debt(const LatticeModel& m, ChipVector& chips, int q)
{
    const auto n = m.size();
    std::vector<int> dist(n, -1);
    std::vector<int> queue{q};
    dist[q] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        for (int w : m.neighbors(v))
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
    }
    // queue is in BFS order, so layers are contiguous runs
    std::vector<std::size_t> layer_start{0};
    for (std::size_t i = 1; i < queue.size(); ++i)
        if (dist[queue[i]] != dist[queue[i - 1]])
            layer_start.push_back(i);
    layer_start.push_back(queue.size());

    for (std::size_t layer = layer_start.size() - 2; layer >= 1; --layer) {
        std::int64_t firings = 0;
        for (auto i = layer_start[layer]; i < layer_start[layer + 1]; ++i) {
            int v = queue[i];
            if (chips[v] >= 0)
                continue;
            int back = 0;
            for (int w : m.neighbors(v))
                back += dist[w] == dist[v] - 1;
            firings = std::max<std::int64_t>(firings, (-std::int64_t(chips[v]) + back - 1) / back);
        }
        if (firings == 0)
            continue;
        // fire the ball of radius layer-1 `firings` times
        for (auto i = layer_start[layer]; i < layer_start[layer + 1]; ++i) {
            int v = queue[i];
            for (int w : m.neighbors(v))
                if (dist[w] == dist[v] - 1) {
                    chips[v] += int(firings);
                    chips[w] -= int(firings);
                }
        }
    }
}

void reduce(const LatticeModel& m, ChipVector& chips, int q)
{
    collect_debt(m, chips, q);

    std::int64_t positive = 0;
    for (std::size_t v = 0; v < chips.size(); ++v)
        if (int(v) != q)
            positive += chips[v];
    const std::int64_t budget = std::int64_t(m.size()) * std::max<std::int64_t>(positive, 1) *
                                (std::max(m.genus(), 0) + 1);

    std::vector<int> outdeg(m.size());
    for (std::int64_t iteration = 0;; ++iteration) {
        auto burnt = burn(m, chips, q);
        std::int64_t times = std::numeric_limits<std::int64_t>::max();
        bool any = false;
        for (std::size_t v = 0; v < m.size(); ++v) {
            if (burnt[v])
                continue;
            any = true;
            int out = 0;
            for (int w : m.neighbors(int(v)))
                out += burnt[w];
            outdeg[v] = out;
            if (out > 0)
                times = std::min<std::int64_t>(times, chips[v] / out);
        }
        if (!any)
            return;
        if (iteration >= budget)
            throw std::logic_error("reduction exceeded its firing budget of " + std::to_string(budget));
        if (times <= 0)
            throw std::logic_error("unburnt set has an unsaturated boundary point");
        for (std::size_t v = 0; v < m.size(); ++v) {
            if (burnt[v] || outdeg[v] == 0)
                continue;
            chips[v] -= int(times) * outdeg[v];
            for (int w : m.neighbors(int(v)))
                if (burnt[w])
                    chips[w] += int(times);
        }
    }
}

bool is_reduced(const LatticeModel& m, std::span<const int> chips, int q)
{
    for (std::size_t v = 0; v < chips.size(); ++v)
        if (int(v) != q && chips[v] < 0)
            return false;
    auto burnt = burn(m, chips, q);
    return std::all_of(burnt.begin(), burnt.end(), [](char b) { return b != 0; });
}

void apply_script(const LatticeModel& m, ChipVector& chips, std::span<const std::int64_t> script)
{
    for (std::size_t v = 0; v < m.size(); ++v) {
        std::int64_t delta = -script[v] * m.degree(int(v));
        for (int w : m.neighbors(int(v)))
            delta += script[w];
        chips[v] += int(delta);
    }
}

} // namespace kernels

} // namespace gonlab
