#pragma once

// Brute-force reference. Every n is decoded on its own by repeated division
// and tested against the raw missing-digits condition; nothing here touches
// the block counts, the digit DP or the block enumerator.

#include "kempner/constraint.hpp"
#include "kempner/numeric.hpp"

#include <cstdint>
#include <vector>

namespace kempner::oracle {

inline constexpr std::uint64_t kRangeCap = 10'000'000;

struct OracleReport {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::uint64_t members = 0;
    Rational sum{0};
    std::uint64_t checksum = 0;  // FNV-1a over the ascending member list
};

/// Raw condition for a single n >= 1.
bool satisfies(const DigitConstraint& c, std::uint64_t n);

std::vector<std::uint64_t> members(const DigitConstraint& c, std::uint64_t lo, std::uint64_t hi);
Rational sum(const DigitConstraint& c, std::uint64_t lo, std::uint64_t hi);
OracleReport report(const DigitConstraint& c, std::uint64_t lo, std::uint64_t hi);

/// Exact sum of reciprocals of the given list (left-to-right pairing, reduced).
Rational reciprocal_sum(const std::vector<std::uint64_t>& values);

}  // namespace kempner::oracle
