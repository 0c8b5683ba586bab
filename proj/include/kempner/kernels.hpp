#pragma once

// Data-parallel kernels. Each parallel kernel has a serial twin with the same
// decomposition; the serial versions are the reference the tests compare
// against, and results are identical regardless of thread count.

#include "kempner/numeric.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace kempner::kernels {

[[nodiscard]] int thread_count();

/// Unreduced sum of 1/v over values (all > 0), by binary splitting.
Fraction reciprocal_sum_serial(std::span<const BigInt> values);
Fraction reciprocal_sum_parallel(std::span<const BigInt> values);

/// Ascending list of n in [lo, hi] with keep(n). keep must be thread-safe.
std::vector<std::uint64_t> filter_range_serial(std::uint64_t lo, std::uint64_t hi,
                                               const std::function<bool(std::uint64_t)>& keep);
std::vector<std::uint64_t> filter_range_parallel(std::uint64_t lo, std::uint64_t hi,
                                                 const std::function<bool(std::uint64_t)>& keep);

/// Evaluates f(0..n-1) into slot i; slots are independent.
template <class T, class F>
std::vector<T> map_indices(std::uint64_t n, F&& f, bool parallel = true) {
    std::vector<T> out(n);
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (std::int64_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = f(static_cast<std::uint64_t>(i));
    return out;
}

}  // namespace kempner::kernels
