#pragma once

#include "kempner/numeric.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace kempner {

enum class Extension { RepeatLast, Cycle };

struct ConstantRule {
    std::uint64_t d;
};

/// A finite list of quotients extended past its end by repeating the last
/// value or by cycling through the whole list.
struct ExplicitRule {
    std::vector<std::uint64_t> values;
    Extension extension = Extension::RepeatLast;
};

/// d_i = base^(i+1), so g_k = base^(k(k+1)/2).
struct PowerRule {
    std::uint64_t base;
};

/// d_i = i + 2, so g_k = (k+1)!.
struct FactorialRule {};

using QuotientRule = std::variant<ConstantRule, ExplicitRule, PowerRule, FactorialRule>;

/// Quotient sequence d_0, d_1, ... of a G-adic system with g_0 = 1 and
/// g_{k+1} = g_k * d_k. Immutable; copies share state.
class QuotientSequence {
public:
    [[nodiscard]] const QuotientRule& rule() const { return impl_->rule; }

    /// Uniform bound d on all quotients. Either declared by the caller or
    /// certified by the rule itself (Constant, Explicit); absent for the
    /// unbounded families.
    [[nodiscard]] std::optional<std::uint64_t> bound_hint() const { return impl_->bound_hint; }

    /// True when the rule produces arbitrarily large quotients.
    [[nodiscard]] bool unbounded() const;

    [[nodiscard]] BigInt quotient(std::uint64_t i) const;
    /// quotient(i), saturated to UINT64_MAX when it does not fit.
    [[nodiscard]] std::uint64_t quotient_u64(std::uint64_t i) const;

    [[nodiscard]] BigInt base_value(std::uint64_t k) const;
    /// g_k when it fits in 64 bits.
    [[nodiscard]] std::optional<std::uint64_t> base_value_u64(std::uint64_t k) const;

    /// Index k with g_k <= n < g_{k+1}; n >= 1.
    [[nodiscard]] std::uint64_t block_index(const BigInt& n) const;

    /// Short human-readable description, e.g. "constant(10)".
    [[nodiscard]] std::string describe() const;

    friend QuotientSequence make_sequence(QuotientRule rule, std::optional<std::uint64_t> bound_hint);

private:
    struct Impl {
        QuotientRule rule;
        std::optional<std::uint64_t> bound_hint;
        std::vector<std::uint64_t> base_u64;  // g_k while it fits
    };
    explicit QuotientSequence(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    std::shared_ptr<const Impl> impl_;
};

/// Validates a rule and builds the sequence. A declared bound_hint must hold
/// for every quotient the rule can produce.
QuotientSequence make_sequence(QuotientRule rule, std::optional<std::uint64_t> bound_hint = std::nullopt);

/// Digits c_0..c_k of a positive integer, least significant first.
struct Numeral {
    std::vector<BigInt> digits;
    QuotientSequence sequence;

    [[nodiscard]] std::uint64_t top_index() const { return digits.size() - 1; }
};

Numeral to_digits(const QuotientSequence& seq, const BigInt& n);
BigInt from_digits(const Numeral& numeral);

/// Same decomposition on machine words: fills digits (cleared first) for n >= 1.
void to_digits_u64(const QuotientSequence& seq, std::uint64_t n, std::vector<std::uint64_t>& digits);

}  // namespace kempner
