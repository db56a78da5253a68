#include <benchmark/benchmark.h>

#include "covergap/factor_table.hpp"
#include "covergap/lcm_profile.hpp"
#include "covergap/rational.hpp"
#include "covergap/reduction.hpp"
#include "covergap/smooth_scan.hpp"

namespace {

using namespace covergap;

const FactorTable& shared_table() {
    static FactorTable table = FactorTable::build(6'160'000);
    return table;
}

void BM_SieveBuild(benchmark::State& state) {
    auto limit = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        FactorTable table = FactorTable::build(limit);
        benchmark::DoNotOptimize(table.largest_prime_factor(limit - 1));
    }
}
BENCHMARK(BM_SieveBuild)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_WindowUpperBound(benchmark::State& state) {
    const FactorTable& table = shared_table();
    auto m = static_cast<std::uint64_t>(state.range(0));
    ScanConfig cfg;
    cfg.max_m = m;
    for (auto _ : state) {
        UpperFixed u = t_upper(table, m, cfg);
        benchmark::DoNotOptimize(u.term_count());
    }
}
BENCHMARK(BM_WindowUpperBound)->Arg(10'000)->Arg(100'000)->Arg(616'000)
    ->Unit(benchmark::kMillisecond);

void BM_WindowExact(benchmark::State& state) {
    const FactorTable& table = shared_table();
    auto m = static_cast<std::uint64_t>(state.range(0));
    ScanConfig cfg;
    cfg.max_m = m;
    for (auto _ : state) {
        Rational t = t_exact(table, m, cfg);
        benchmark::DoNotOptimize(t.get_num());
    }
}
BENCHMARK(BM_WindowExact)->Arg(116)->Arg(2'000)->Unit(benchmark::kMicrosecond);

void BM_DivisorSum(benchmark::State& state) {
    const FactorTable& table = shared_table();
    auto m = static_cast<std::uint64_t>(state.range(0));
    FactoredInteger profile = compute_L(m, 10, table);
    for (auto _ : state) {
        Rational s = divisor_reciprocal_sum(profile, m, 10 * m);
        benchmark::DoNotOptimize(s.get_num());
    }
}
BENCHMARK(BM_DivisorSum)->Arg(20)->Arg(63)->Arg(116);

void BM_ThresholdGroups(benchmark::State& state) {
    // The widest split the case analyses reach: m = 63 against p = 23.
    const FactorTable& table = shared_table();
    FactoredInteger profile = compute_L(63, 10, table);
    ModuliMultiset moduli(divisors_in_interval(profile, 63, 630));
    ModSplit split = mod_p_split(moduli, 23);
    for (auto _ : state) {
        ThresholdGroups groups = max_threshold_groups(split.M1, split.deficit);
        benchmark::DoNotOptimize(groups.count);
    }
}
BENCHMARK(BM_ThresholdGroups)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
