#include "kempner/oracle.hpp"

#include "kempner/error.hpp"
#include "kempner/kernels.hpp"

#include <limits>

namespace kempner::oracle {

namespace {

void check_range(std::uint64_t lo, std::uint64_t hi) {
    if (lo == 0) throw Error(ErrorCode::NonPositiveInput, "oracle range must start at 1 or above");
    if (hi > kRangeCap)
        throw Error(ErrorCode::RangeTooLarge, "oracle range end " + std::to_string(hi) + " exceeds " +
                                                  std::to_string(kRangeCap));
}

// Pairwise sum of 1/v over values[lo, hi), unreduced.
std::pair<BigInt, BigInt> pair_sum(const std::vector<std::uint64_t>& values, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return {BigInt(1), to_big(values[lo])};
    const std::size_t mid = lo + (hi - lo) / 2;
    auto [an, ad] = pair_sum(values, lo, mid);
    auto [bn, bd] = pair_sum(values, mid, hi);
    return {an * bd + bn * ad, ad * bd};
}

}  // namespace

bool satisfies(const DigitConstraint& c, std::uint64_t n) {
    const auto& seq = c.sequence();
    constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();
    for (std::uint64_t i = 0; n > 0; ++i) {
        const std::uint64_t d = seq.quotient_u64(i);
        const std::uint64_t digit = d == saturated ? n : n % d;
        n = d == saturated ? 0 : n / d;
        if (const DigitSet* u = c.forbidden(i); u != nullptr && u->contains(digit)) return false;
    }
    return true;
}

std::vector<std::uint64_t> members(const DigitConstraint& c, std::uint64_t lo, std::uint64_t hi) {
    check_range(lo, hi);
    return kernels::filter_range_parallel(lo, hi, [&c](std::uint64_t n) { return satisfies(c, n); });
}

Rational reciprocal_sum(const std::vector<std::uint64_t>& values) {
    if (values.empty()) return 0;
    auto [num, den] = pair_sum(values, 0, values.size());
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational sum(const DigitConstraint& c, std::uint64_t lo, std::uint64_t hi) {
    return reciprocal_sum(members(c, lo, hi));
}

OracleReport report(const DigitConstraint& c, std::uint64_t lo, std::uint64_t hi) {
    const auto list = members(c, lo, hi);
    OracleReport r;
    r.lo = lo;
    r.hi = hi;
    r.members = list.size();
    r.sum = reciprocal_sum(list);
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint64_t v : list) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xffU;
            h *= 1099511628211ULL;
        }
    }
    r.checksum = h;
    return r;
}

}  // namespace kempner::oracle
