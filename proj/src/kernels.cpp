#include "kempner/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kempner::kernels {

namespace {

constexpr std::size_t kLeaf = 32;
constexpr std::size_t kTaskCutoff = 4096;
constexpr std::uint64_t kChunk = 1 << 15;

Fraction leaf_sum(std::span<const BigInt> values) {
    Fraction acc{0, 1};
    for (const auto& v : values) {
        acc.num = acc.num * v + acc.den;
        acc.den *= v;
    }
    return acc;
}

Fraction split_sum(std::span<const BigInt> values, bool spawn) {
    if (values.size() <= kLeaf) return leaf_sum(values);
    const std::size_t mid = values.size() / 2;
    Fraction left, right;
    if (spawn && values.size() >= kTaskCutoff) {
#pragma omp task shared(left) firstprivate(values, mid, spawn)
        left = split_sum(values.first(mid), spawn);
        right = split_sum(values.subspan(mid), spawn);
#pragma omp taskwait
    } else {
        left = split_sum(values.first(mid), spawn);
        right = split_sum(values.subspan(mid), spawn);
    }
    return left + right;
}

std::vector<std::uint64_t> filter_chunk(std::uint64_t lo, std::uint64_t hi,
                                        const std::function<bool(std::uint64_t)>& keep) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = lo;; ++n) {
        if (keep(n)) out.push_back(n);
        if (n == hi) break;
    }
    return out;
}

}  // namespace

int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

Fraction reciprocal_sum_serial(std::span<const BigInt> values) { return split_sum(values, false); }

Fraction reciprocal_sum_parallel(std::span<const BigInt> values) {
    Fraction result;
#pragma omp parallel
#pragma omp single
    result = split_sum(values, true);
    return result;
}

std::vector<std::uint64_t> filter_range_serial(std::uint64_t lo, std::uint64_t hi,
                                               const std::function<bool(std::uint64_t)>& keep) {
    if (lo > hi) return {};
    return filter_chunk(lo, hi, keep);
}

std::vector<std::uint64_t> filter_range_parallel(std::uint64_t lo, std::uint64_t hi,
                                                 const std::function<bool(std::uint64_t)>& keep) {
    if (lo > hi) return {};
    const std::uint64_t chunks = (hi - lo) / kChunk + 1;
    std::vector<std::vector<std::uint64_t>> parts(chunks);
    const auto count = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < count; ++c) {
        const std::uint64_t a = lo + static_cast<std::uint64_t>(c) * kChunk;
        const std::uint64_t b = (hi - a) < kChunk ? hi : a + kChunk - 1;
        parts[static_cast<std::size_t>(c)] = filter_chunk(a, b, keep);
    }
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    std::vector<std::uint64_t> out;
    out.reserve(total);
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

}  // namespace kempner::kernels
