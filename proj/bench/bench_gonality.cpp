#include <benchmark/benchmark.h>

#include "gonlab/families.hpp"
#include "gonlab/lattice.hpp"
#include "gonlab/rank.hpp"

using namespace gonlab;
using namespace gonlab::families;

namespace {

MetricGraph family_graph(int which)
{
    FamilySpec spec;
    switch (which) {
    case 0: spec.variant = CompleteK{6}; break;
    case 1: spec.variant = KdMinusKh{8, 4}; break;
    case 2: spec.variant = Bipartite{4, 4}; break;
    default: spec.variant = Sharp{7, 2}; break;
    }
    return build(spec);
}

const char* family_name(int which)
{
    static const char* names[] = {"K6", "K8-minus-K4", "K4,4", "Sharp(7,2)"};
    return names[which];
}

void BM_GonalityParallel(benchmark::State& state)
{
    auto g = family_graph(int(state.range(0)));
    RankOptions opts;
    opts.subdivision = int(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(gonality_search(g, opts).value);
    state.SetLabel(family_name(int(state.range(0))));
}

void BM_GonalitySerial(benchmark::State& state)
{
    auto g = family_graph(int(state.range(0)));
    RankOptions opts;
    opts.subdivision = int(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(gonality_search_serial(g, opts).value);
    state.SetLabel(family_name(int(state.range(0))));
}

void BM_SweepParallel(benchmark::State& state)
{
    auto g = family_graph(int(state.range(0)));
    auto m = LatticeModel::build(g, int(state.range(1)));
    RankOptions opts;
    auto support = rank_support(m, opts);
    for (auto _ : state)
        benchmark::DoNotOptimize(sweep_degree(m, 3, support, opts).candidates);
    state.SetLabel(family_name(int(state.range(0))));
}

void BM_SweepSerial(benchmark::State& state)
{
    auto g = family_graph(int(state.range(0)));
    auto m = LatticeModel::build(g, int(state.range(1)));
    RankOptions opts;
    auto support = rank_support(m, opts);
    for (auto _ : state)
        benchmark::DoNotOptimize(sweep_degree_serial(m, 3, support, opts).candidates);
    state.SetLabel(family_name(int(state.range(0))));
}

void family_args(benchmark::internal::Benchmark* b)
{
    for (int which = 0; which < 4; ++which)
        for (int s : {1, 2})
            b->Args({which, s});
}

} // namespace

BENCHMARK(BM_GonalityParallel)->Apply(family_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GonalitySerial)->Apply(family_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Apply(family_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Apply(family_args)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
