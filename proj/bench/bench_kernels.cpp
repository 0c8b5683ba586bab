#include "kempner/config.hpp"
#include "kempner/harmonic.hpp"
#include "kempner/kernels.hpp"

#include <benchmark/benchmark.h>

using namespace kempner;

namespace {

const DigitConstraint& kempner10() {
    static const DigitConstraint c = config::build_constraint(config::preset("kempner10"));
    return c;
}

std::vector<BigInt> block_values(std::uint64_t k) {
    std::vector<BigInt> out;
    enumerate_block(kempner10(), k, 1'000'000, [&](const BigInt& v) { out.push_back(v); });
    return out;
}

void BM_ReciprocalSum(benchmark::State& state, bool parallel) {
    const auto values = block_values(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) {
        Fraction f = parallel ? kernels::reciprocal_sum_parallel(values) : kernels::reciprocal_sum_serial(values);
        benchmark::DoNotOptimize(f.den);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * values.size()));
}

void BM_FilterRange(benchmark::State& state, bool parallel) {
    const auto hi = static_cast<std::uint64_t>(state.range(0));
    const auto keep = [](std::uint64_t n) { return is_member_u64(kempner10(), n); };
    for (auto _ : state) {
        auto v = parallel ? kernels::filter_range_parallel(1, hi, keep) : kernels::filter_range_serial(1, hi, keep);
        benchmark::DoNotOptimize(v.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * hi));
}

void BM_BlockReports(benchmark::State& state, bool parallel) {
    const auto max_k = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        auto rows = block_reports(kempner10(), max_k, parallel);
        benchmark::DoNotOptimize(rows.data());
    }
}

}  // namespace

BENCHMARK_CAPTURE(BM_ReciprocalSum, serial, false)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ReciprocalSum, parallel, true)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FilterRange, serial, false)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FilterRange, parallel, true)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BlockReports, serial, false)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BlockReports, parallel, true)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
