#pragma once

#include "kempner/index_set.hpp"
#include "kempner/numeric.hpp"
#include "kempner/sequence.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kempner {

/// A forbidden digit set U_i: either an explicit list, or the whole nonzero
/// range [1, d_i - 1] whose size depends on the quotient at that position.
class DigitSet {
public:
    static DigitSet listed(std::vector<std::uint64_t> digits);
    static DigitSet nonzero();

    [[nodiscard]] bool is_nonzero_range() const { return nonzero_; }
    [[nodiscard]] const std::vector<std::uint64_t>& digits() const { return digits_; }

    [[nodiscard]] bool contains(std::uint64_t x) const;
    [[nodiscard]] bool contains(const BigInt& x) const;
    [[nodiscard]] bool contains_zero() const { return !nonzero_ && !digits_.empty() && digits_.front() == 0; }

    /// |U| for a position with quotient d.
    [[nodiscard]] BigInt size(const BigInt& d) const;
    /// Number of members of U in [lo, hi).
    [[nodiscard]] BigInt count_in(const BigInt& lo, const BigInt& hi, const BigInt& d) const;
    /// True when U = [1, d - 1].
    [[nodiscard]] bool is_full_nonzero(const BigInt& d) const;

    [[nodiscard]] std::string describe() const;

    friend bool operator==(const DigitSet&, const DigitSet&) = default;

private:
    bool nonzero_ = false;
    std::vector<std::uint64_t> digits_;  // sorted, unique
};

struct ForbiddenSpec {
    std::optional<DigitSet> default_set;
    std::map<std::uint64_t, DigitSet> overrides;
};

/// Missing-digits condition: c_i ∉ U_i for every i ∈ I up to the top digit.
class DigitConstraint {
public:
    [[nodiscard]] const QuotientSequence& sequence() const { return seq_; }
    [[nodiscard]] const IndexSet& index_set() const { return index_set_; }
    [[nodiscard]] const ForbiddenSpec& forbidden_spec() const { return forbidden_; }

    /// U_i, or nullptr when i ∉ I.
    [[nodiscard]] const DigitSet* forbidden(std::uint64_t i) const;

    /// Digits available at a non-leading position: d_i - |U_i| on I, d_i off I.
    [[nodiscard]] BigInt allowed(std::uint64_t i) const;
    /// Nonzero digits available at the leading position k.
    [[nodiscard]] BigInt allowed_leading(std::uint64_t k) const;
    [[nodiscard]] bool digit_allowed(std::uint64_t i, const BigInt& c) const;
    [[nodiscard]] bool digit_allowed(std::uint64_t i, std::uint64_t c) const;

    /// Smallest allowed digit at position i that is >= from, if any.
    [[nodiscard]] std::optional<BigInt> first_allowed(std::uint64_t i, const BigInt& from) const;

    [[nodiscard]] std::string describe() const;

    friend DigitConstraint make_constraint(const QuotientSequence&, const IndexSet&, ForbiddenSpec);

private:
    DigitConstraint(QuotientSequence seq, IndexSet set, ForbiddenSpec spec)
        : seq_(std::move(seq)), index_set_(std::move(set)), forbidden_(std::move(spec)) {}

    QuotientSequence seq_;
    IndexSet index_set_;
    ForbiddenSpec forbidden_;
};

DigitConstraint make_constraint(const QuotientSequence& seq, const IndexSet& index_set, ForbiddenSpec forbidden);

/// Binary constraint c_i = v_i on the given positions.
DigitConstraint fixed_bits(const std::map<std::uint64_t, int>& bits);
/// c_i = default_bit on every i ∈ I, except the listed positions.
DigitConstraint fixed_bits(const IndexSet& index_set, int default_bit, const std::map<std::uint64_t, int>& overrides = {});

bool is_member(const DigitConstraint& c, const BigInt& n);
bool is_member_u64(const DigitConstraint& c, std::uint64_t n);

struct BlockCount {
    std::uint64_t k = 0;
    BigInt exact{0};
    BigInt product_bound{0};
    bool empty = false;
};

BlockCount block_count_exact(const DigitConstraint& c, std::uint64_t k);

/// A(n): members <= n, by most-significant-first digit DP.
BigInt count_upto(const DigitConstraint& c, const BigInt& n);

struct EnumerationResult {
    std::uint64_t produced = 0;
    bool truncated = false;
};

/// Streams A_k in ascending order, stopping after `budget` elements. When the
/// block holds more than that, `truncated` is set.
EnumerationResult enumerate_block(const DigitConstraint& c, std::uint64_t k, std::uint64_t budget,
                                  const std::function<void(const BigInt&)>& emit);

struct BlockMembers {
    std::vector<BigInt> members;
    bool truncated = false;
};
BlockMembers block_members(const DigitConstraint& c, std::uint64_t k, std::uint64_t budget);

enum class Finiteness { Finite, Infinite, Unknown };
std::string_view to_string(Finiteness f);

Finiteness is_finite_set(const DigitConstraint& c);

}  // namespace kempner
