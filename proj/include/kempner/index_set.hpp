#pragma once

#include "kempner/numeric.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace kempner {

/// Asymptotic shape of the counting function I(k) = |I ∩ [0, k]|, with the
/// explicit bounds the rule algebra can prove.
struct IndexGrowth {
    enum class Kind {
        Bounded,      // I(k) <= size for all k
        Logarithmic,  // log_b k <= I(k) <= log_b k + 1 for k >= 1
        Linear,       // I(k) >= density*k - offset - log_slack*log_{slack_base}(k) for k >= 1
    };
    Kind kind = Kind::Bounded;
    std::uint64_t size = 0;
    std::uint64_t log_base = 0;
    Rational density{0};
    Rational offset{0};
    std::uint64_t log_slack = 0;
    std::uint64_t slack_base = 2;
};

/// Upper bound (or exact value when `exact`) of a tail sum.
struct TailSum {
    Rational value{0};
    bool exact = true;
};

class IndexSet {
public:
    struct All {};
    struct Explicit {
        std::vector<std::uint64_t> indices;  // sorted, unique
    };
    struct Arithmetic {
        std::uint64_t first;
        std::uint64_t step;
    };
    struct PowersOf {
        std::uint64_t base;
    };
    struct Complement {
        std::shared_ptr<const IndexSet> inner;
    };
    using Rule = std::variant<All, Explicit, Arithmetic, PowersOf, Complement>;

    static IndexSet all();
    static IndexSet explicit_set(std::vector<std::uint64_t> indices);
    static IndexSet arithmetic(std::uint64_t first, std::uint64_t step);
    static IndexSet powers_of(std::uint64_t base);
    /// Complement of a complement collapses back to the original rule.
    static IndexSet complement(const IndexSet& inner);

    [[nodiscard]] const Rule& rule() const { return rule_; }

    [[nodiscard]] bool contains(std::uint64_t i) const;
    /// I(k) = |I ∩ [0, k]|.
    [[nodiscard]] std::uint64_t count(std::uint64_t k) const;
    /// Smallest member >= from, if any.
    [[nodiscard]] std::optional<std::uint64_t> next_member(std::uint64_t from) const;

    [[nodiscard]] bool is_finite() const;
    [[nodiscard]] bool is_cofinite() const;
    /// Largest member of a finite set (nullopt when empty or infinite).
    [[nodiscard]] std::optional<std::uint64_t> max_member() const;

    [[nodiscard]] IndexGrowth growth() const;

    /// Sum of r^i over members i >= from, for 0 < r < 1. Exact for the rules
    /// with a closed form, otherwise a certified upper bound.
    [[nodiscard]] TailSum geometric_tail(std::uint64_t from, const Rational& r) const;

    [[nodiscard]] std::string describe() const;

private:
    explicit IndexSet(Rule rule) : rule_(std::move(rule)) {}

    Rule rule_;
};

}  // namespace kempner
