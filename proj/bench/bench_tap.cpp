// Serial reference vs OpenMP kernels on generated instances.

#include "tap/generate.hpp"
#include "tap/reductions.hpp"
#include "tap/sat.hpp"
#include "tap/solvers.hpp"
#include "tap/stability.hpp"

#include <benchmark/benchmark.h>

namespace {

tap::Execution execution_of(const benchmark::State &state)
{
    return state.range(1) ? tap::Execution::parallel : tap::Execution::serial;
}

tap::Instance market(int applicants, std::uint64_t seed)
{
    tap::RandomInstanceOptions options;
    options.applicants = applicants;
    options.schools = applicants / 4 + 1;
    options.max_list = 5;
    options.max_capacity = 3;
    return tap::random_instance(options, seed);
}

void BM_FindBlockingPairs(benchmark::State &state)
{
    const auto inst = tap::reduce_to_tap(tap::random_223(static_cast<int>(state.range(0)), 1)).instance;
    const tap::Matching empty(inst);
    for (auto _ : state)
        benchmark::DoNotOptimize(tap::find_blocking_pairs(inst, empty, execution_of(state)));
    state.counters["applicants"] = inst.applicant_count();
}
BENCHMARK(BM_FindBlockingPairs)->ArgsProduct({{30, 300, 1500}, {0, 1}})->Unit(benchmark::kMicrosecond);

void BM_EnumerateStable(benchmark::State &state)
{
    const auto inst = market(static_cast<int>(state.range(0)), 11);
    tap::SearchOptions options;
    options.execution = execution_of(state);
    for (auto _ : state) {
        const auto result = tap::enumerate_stable(inst, options);
        benchmark::DoNotOptimize(result.matchings.size());
        state.counters["nodes"] = static_cast<double>(result.stats.nodes);
    }
}
BENCHMARK(BM_EnumerateStable)->ArgsProduct({{10, 13}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_MinBlockingPairs(benchmark::State &state)
{
    const auto inst = market(static_cast<int>(state.range(0)), 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(tap::min_blocking_pairs(inst, tap::default_node_budget, execution_of(state)));
}
BENCHMARK(BM_MinBlockingPairs)->ArgsProduct({{10, 12}, {0, 1}})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
