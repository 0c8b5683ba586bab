#pragma once

#include "kempner/constraint.hpp"
#include "kempner/numeric.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kempner {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;
inline constexpr std::uint64_t kDefaultKWindow = 10'000;
inline constexpr std::uint64_t kDefaultIWindow = 4'096;

/// One block [g_k, g_{k+1} - 1]: |A_k| and the two-sided bracket
/// |A_k|/g_{k+1} <= sum_{a in A_k} 1/a <= |A_k|/g_k, plus running totals.
struct BlockReport {
    std::uint64_t k = 0;
    BigInt g_k;
    BigInt g_k1;
    BigInt count;
    Rational bracket_lo;
    Rational bracket_hi;
    Rational cumulative_lo;
    Rational cumulative_hi;
};

BlockReport block_bracket(const DigitConstraint& c, std::uint64_t k);
/// Reports for k = 0..max_k with cumulative sums in index order.
std::vector<BlockReport> block_reports(const DigitConstraint& c, std::uint64_t max_k, bool parallel = true);

struct PartialSum {
    Rational value{0};
    std::uint64_t elements = 0;
    bool truncated = false;
};

/// Exact sum of 1/a over members a in [lo, hi], enumerating at most `budget`
/// elements. On truncation, value covers the elements seen so far.
PartialSum partial_sum_between(const DigitConstraint& c, const BigInt& lo, const BigInt& hi,
                               std::uint64_t budget = kDefaultBudget);
PartialSum partial_sum_exact(const DigitConstraint& c, const BigInt& n_max, std::uint64_t budget = kDefaultBudget);
/// Sum over the whole block A_k.
PartialSum block_sum_exact(const DigitConstraint& c, std::uint64_t k, std::uint64_t budget = kDefaultBudget);

enum class Verdict { Convergent, Divergent, FiniteSet, Inconclusive };
std::string_view to_string(Verdict v);

/// Which hypothesis produced a verdict.
enum class RuleFired { None, FiniteSet, BoundedConvergence, BoundedDivergence, UnboundedDivergence };
std::string_view to_string(RuleFired r);

struct Margin {
    std::optional<Rational> delta;
    /// k0 / k1 (window-verified) or i0 for the unbounded-quotient rule.
    std::optional<std::uint64_t> threshold_index;
    /// Index past which the symbolic growth bound guarantees the inequality.
    std::optional<std::uint64_t> asymptotic_index;
    std::optional<std::uint64_t> window;
    /// Distance from the threshold at the end of the window, in units of I(k).
    std::optional<double> slack;
    std::optional<Rational> tail_sum;
    bool tail_exact = true;
};

struct Classification {
    Verdict verdict = Verdict::Inconclusive;
    RuleFired rule = RuleFired::None;
    Margin margin;
    std::vector<std::string> notes;
};

/// Default search grid for delta, largest first.
std::vector<Rational> default_delta_grid();

Classification convergence_by_bounded_quotients(const DigitConstraint& c, std::optional<Rational> delta = std::nullopt,
                                                std::uint64_t k_window = kDefaultKWindow);

Classification divergence_by_unbounded_quotients(const DigitConstraint& c, std::uint64_t i_window = kDefaultIWindow);

Classification classify(const DigitConstraint& c, std::optional<Rational> delta = std::nullopt);

/// d * sum_{k=k0}^{K} (1 - 1/d)^{I(k)}.
Rational tail_upper_estimate(const DigitConstraint& c, std::uint64_t k0, std::uint64_t K);

/// 1 - sum x_i, a lower bound for prod (1 - x_i) when every x_i is in [0, 1).
Rational weierstrass_lower(std::span<const Rational> xs);

/// A(n) / n.
Rational density(const DigitConstraint& c, const BigInt& n);

}  // namespace kempner
