#include "gonlab/rank.hpp"

#include <algorithm>
#include <climits>
#include <exception>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include <omp.h>

#include "gonlab/error.hpp"

namespace gonlab {

namespace {

struct ChipHash {
    std::size_t operator()(const ChipVector& chips) const noexcept
    {
        std::uint64_t h = 1469598103934665603ull;
        for (int c : chips) {
            h ^= std::uint64_t(std::uint32_t(c));
            h *= 1099511628211ull;
        }
        return std::size_t(h);
    }
};

using ClassMap = std::unordered_map<ChipVector, int, ChipHash>;

// Memoized rk(D) = 1 + min_a rk(D - a) over classes, keyed by the
// reduced form at lattice vertex 0.
class RankEngine {
public:
    RankEngine(const LatticeModel& m, std::vector<int> support, std::size_t max_states)
        : model_(m), support_(std::move(support)), max_states_(max_states)
    {
    }

    int rank_of(ChipVector chips)
    {
        kernels::reduce(model_, chips, 0);
        return rank_reduced(chips);
    }

private:
    int rank_reduced(const ChipVector& chips)
    {
        if (chips[0] < 0)
            return -1;
        if (auto it = memo_.find(chips); it != memo_.end())
            return it->second;

        int lowest = INT_MAX;
        for (int a : support_) {
            ChipVector next = chips;
            --next[a];
            // removing a chip keeps a reduced divisor reduced unless it
            // creates debt away from the base
            if (a != 0 && next[a] < 0)
                kernels::reduce(model_, next, 0);
            lowest = std::min(lowest, rank_reduced(next));
            if (lowest < 0)
                break;
        }
        int result = lowest + 1;
        if (memo_.size() >= max_states_)
            throw BudgetExceeded("rank computation visited more than " + std::to_string(max_states_) +
                                 " divisor classes");
        memo_.emplace(chips, result);
        return result;
    }

    const LatticeModel& model_;
    std::vector<int> support_;
    std::size_t max_states_;
    ClassMap memo_;
};

int subdivision_for(const MetricGraph& g, const std::vector<const Divisor*>& divisors, const RankOptions& opts)
{
    Divisor custom;
    for (const auto& p : opts.custom_support)
        custom.add(p, 1);
    auto all = divisors;
    if (opts.support == SupportKind::Custom)
        all.push_back(&custom);
    return resolve_subdivision(g, all, opts.subdivision);
}

std::size_t multiset_count(std::size_t n, int k, std::size_t cap)
{
    // C(n + k - 1, k), saturating at cap + 1
    if (k == 0)
        return 1;
    if (n == 0)
        return 0;
    long double value = 1;
    for (int i = 1; i <= k; ++i) {
        value = value * (long double)(n - 1 + std::size_t(i)) / (long double)i;
        if (value > (long double)cap)
            return cap + 1;
    }
    return std::size_t(value + 0.5L);
}

// All nondecreasing index sequences of length k over [0, n), lexicographic.
std::vector<int> enumerate_candidates(std::size_t n, int k, std::size_t count)
{
    std::vector<int> flat;
    flat.reserve(count * std::size_t(k));
    if (k == 0)
        return flat;
    std::vector<int> current(k, 0);
    while (true) {
        flat.insert(flat.end(), current.begin(), current.end());
        int i = k - 1;
        while (i >= 0 && current[i] == int(n) - 1)
            --i;
        if (i < 0)
            break;
        ++current[i];
        for (int j = i + 1; j < k; ++j)
            current[j] = current[i];
    }
    return flat;
}

ChipVector chips_of(const LatticeModel& m, const int* indices, int k)
{
    ChipVector chips(m.size(), 0);
    for (int i = 0; i < k; ++i)
        ++chips[indices[i]];
    return chips;
}

int thread_count(const RankOptions& opts) { return opts.jobs > 0 ? opts.jobs : omp_get_max_threads(); }

Divisor witness_divisor_of(const LatticeModel& m, const std::vector<int>& indices)
{
    ChipVector chips = chips_of(m, indices.data(), int(indices.size()));
    return m.to_divisor(chips);
}

template <typename Sweep>
GonalityCertificate search(const MetricGraph& g, const RankOptions& opts, Sweep sweep)
{
    require_valid(g);
    require_finite(g);
    const int s = opts.subdivision.value_or(1);
    auto model = LatticeModel::build(g, s);
    auto support = rank_support(model, opts);
    const int max_degree = opts.max_degree.value_or(int(model.original_vertex_count()));

    ExhaustionRecord previous{s, 0, false, 0, 0};
    for (int d = 0; d <= max_degree; ++d) {
        auto result = sweep(model, d, support, opts);
        if (result.witness) {
            GonalityCertificate cert;
            cert.value = d;
            cert.witness = witness_divisor_of(model, *result.witness);
            cert.exhaustion = previous;
            cert.lower_bound = "lattice exhaustion at subdivision " + std::to_string(s) + ": no effective "
                               "lattice divisor of degree " + std::to_string(d - 1) +
                               " has rank >= 1 (consistency check, not a proof of the metric lower bound)";
            return cert;
        }
        previous = {s, d, true, result.candidates, result.classes};
    }
    throw BudgetExceeded("no divisor of rank >= 1 found up to degree " + std::to_string(max_degree));
}

} // namespace

std::vector<int> rank_support(const LatticeModel& m, const RankOptions& opts)
{
    std::vector<int> support;
    switch (opts.support) {
    case SupportKind::LatticeVertices:
        support.resize(m.size());
        std::iota(support.begin(), support.end(), 0);
        break;
    case SupportKind::OriginalVertices:
        support.resize(m.original_vertex_count());
        std::iota(support.begin(), support.end(), 0);
        break;
    case SupportKind::Custom:
        if (opts.custom_support.empty())
            throw InvalidDivisor("custom rank support is empty");
        for (const auto& p : opts.custom_support)
            support.push_back(m.index_of(p));
        std::sort(support.begin(), support.end());
        support.erase(std::unique(support.begin(), support.end()), support.end());
        break;
    }
    return support;
}

bool has_effective_rep(const MetricGraph& g, const Divisor& d, const RankOptions& opts)
{
    check_divisor(g, d);
    if (d.degree() < 0)
        return false;
    auto model = LatticeModel::build(g, subdivision_for(g, {&d}, opts));
    auto chips = model.to_chips(d);
    kernels::reduce(model, chips, 0);
    return chips[0] >= 0;
}

int rank(const MetricGraph& g, const Divisor& d, const RankOptions& opts)
{
    check_divisor(g, d);
    if (d.degree() < 0)
        return -1;
    auto model = LatticeModel::build(g, subdivision_for(g, {&d}, opts));
    RankEngine engine(model, rank_support(model, opts), opts.max_states);
    return engine.rank_of(model.to_chips(d));
}

int riemann_roch_residual(const MetricGraph& g, const Divisor& d, const RankOptions& opts)
{
    auto k = canonical_divisor(g);
    auto dual = k - d;
    RankOptions pinned = opts;
    pinned.subdivision = subdivision_for(g, {&d}, opts);
    return rank(g, d, pinned) - rank(g, dual, pinned) - d.degree() - 1 + genus(g);
}

bool has_rank_at_least_one(const LatticeModel& m, std::span<const int> chips, const std::vector<int>& support)
{
    ChipVector work(chips.begin(), chips.end());
    for (int a : support) {
        std::copy(chips.begin(), chips.end(), work.begin());
        kernels::reduce(m, work, a);
        if (work[a] < 1)
            return false;
    }
    return true;
}

DegreeSweep sweep_degree(const LatticeModel& m, int degree, const std::vector<int>& support,
                         const RankOptions& opts)
{
    DegreeSweep out;
    out.degree = degree;
    const auto count = multiset_count(m.size(), degree, opts.max_candidates);
    if (count > opts.max_candidates)
        throw BudgetExceeded("degree " + std::to_string(degree) + " sweep exceeds " +
                             std::to_string(opts.max_candidates) + " candidates");
    const auto candidates = enumerate_candidates(m.size(), degree, count);
    out.candidates = count;

    const auto n = std::int64_t(count);
    const int threads = thread_count(opts);
    std::vector<ChipVector> canonical(count);
    std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            auto chips = chips_of(m, candidates.data() + i * degree, degree);
            kernels::reduce(m, chips, 0);
            canonical[i] = std::move(chips);
        } catch (...) {
#pragma omp critical(gonlab_sweep_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);

    // first candidate index of every class, ascending
    std::vector<std::int64_t> representatives;
    {
        std::unordered_set<ChipVector, ChipHash> seen;
        for (std::int64_t i = 0; i < n; ++i)
            if (seen.insert(canonical[i]).second)
                representatives.push_back(i);
    }
    out.classes = representatives.size();

    const auto classes = std::int64_t(representatives.size());
    std::vector<char> passes(representatives.size(), 0);
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (std::int64_t k = 0; k < classes; ++k) {
        try {
            passes[k] = has_rank_at_least_one(m, canonical[representatives[k]], support) ? 1 : 0;
        } catch (...) {
#pragma omp critical(gonlab_sweep_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);

    for (std::int64_t k = 0; k < classes; ++k)
        if (passes[k]) {
            auto first = candidates.begin() + representatives[k] * degree;
            out.witness = std::vector<int>(first, first + degree);
            break;
        }
    return out;
}

DegreeSweep sweep_degree_serial(const LatticeModel& m, int degree, const std::vector<int>& support,
                                const RankOptions& opts)
{
    DegreeSweep out;
    out.degree = degree;
    const auto count = multiset_count(m.size(), degree, opts.max_candidates);
    if (count > opts.max_candidates)
        throw BudgetExceeded("degree " + std::to_string(degree) + " sweep exceeds " +
                             std::to_string(opts.max_candidates) + " candidates");
    const auto candidates = enumerate_candidates(m.size(), degree, count);
    out.candidates = count;

    std::unordered_set<ChipVector, ChipHash> seen;
    for (std::size_t i = 0; i < count; ++i) {
        const int* indices = candidates.data() + i * std::size_t(degree);
        auto chips = chips_of(m, indices, degree);
        if (!out.witness && has_rank_at_least_one(m, chips, support))
            out.witness = std::vector<int>(indices, indices + degree);
        kernels::reduce(m, chips, 0);
        seen.insert(std::move(chips));
    }
    out.classes = seen.size();
    return out;
}

DegreeSweep sweep_degree(const MetricGraph& g, int degree, int subdivision, const RankOptions& opts)
{
    auto model = LatticeModel::build(g, subdivision);
    return sweep_degree(model, degree, rank_support(model, opts), opts);
}

GonalityCertificate gonality_search(const MetricGraph& g, const RankOptions& opts)
{
    return search(g, opts, [](const LatticeModel& m, int d, const std::vector<int>& support,
                              const RankOptions& o) { return sweep_degree(m, d, support, o); });
}

GonalityCertificate gonality_search_serial(const MetricGraph& g, const RankOptions& opts)
{
    return search(g, opts, [](const LatticeModel& m, int d, const std::vector<int>& support,
                              const RankOptions& o) { return sweep_degree_serial(m, d, support, o); });
}

} // namespace gonlab
