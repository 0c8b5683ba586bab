#pragma once

#include "kempner/config.hpp"
#include "kempner/constraint.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace kempner::test {

inline DigitConstraint preset(const std::string& name) { return config::build_constraint(config::preset(name)); }

inline DigitConstraint kempner10() { return preset("kempner10"); }
inline DigitConstraint power2_no_zero() { return preset("power2-no-zero"); }

inline DigitConstraint simple(QuotientRule rule, IndexSet set, std::vector<std::uint64_t> forbidden) {
    ForbiddenSpec spec;
    spec.default_set = DigitSet::listed(std::move(forbidden));
    return make_constraint(make_sequence(std::move(rule)), set, std::move(spec));
}

/// Decimal digit test written directly on the string form.
inline bool has_decimal_digit(std::uint64_t n, char digit) { return std::to_string(n).find(digit) != std::string::npos; }

/// Random constraint over small radices; always valid.
inline DigitConstraint random_constraint(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, 99);
    std::uniform_int_distribution<std::uint64_t> radix(2, 7);

    QuotientSequence seq = make_sequence(ConstantRule{2});
    std::uint64_t min_d = 2;
    switch (pick(rng) % 4) {
        case 0: {
            const std::uint64_t d = radix(rng);
            seq = make_sequence(ConstantRule{d});
            min_d = d;
            break;
        }
        case 1: {
            std::vector<std::uint64_t> values(1 + pick(rng) % 4);
            for (auto& v : values) v = radix(rng);
            min_d = *std::min_element(values.begin(), values.end());
            seq = make_sequence(ExplicitRule{values, pick(rng) % 2 ? Extension::Cycle : Extension::RepeatLast});
            break;
        }
        case 2: seq = make_sequence(PowerRule{2 + static_cast<std::uint64_t>(pick(rng) % 2)}); break;
        default: seq = make_sequence(FactorialRule{}); break;
    }

    IndexSet set = IndexSet::all();
    switch (pick(rng) % 5) {
        case 0: break;
        case 1: set = IndexSet::explicit_set({0, static_cast<std::uint64_t>(pick(rng) % 5), 7}); break;
        case 2: set = IndexSet::arithmetic(pick(rng) % 3, 1 + pick(rng) % 3); break;
        case 3: set = IndexSet::powers_of(2 + pick(rng) % 2); break;
        default: set = IndexSet::complement(IndexSet::arithmetic(1, 2 + pick(rng) % 2)); break;
    }

    ForbiddenSpec spec;
    if (pick(rng) % 6 == 0) {
        spec.default_set = DigitSet::nonzero();
    } else {
        // digits below the smallest quotient, never all of them
        std::vector<std::uint64_t> digits;
        for (std::uint64_t x = 0; x < min_d; ++x)
            if (pick(rng) % 2) digits.push_back(x);
        if (digits.empty()) digits.push_back(pick(rng) % min_d);
        if (digits.size() == min_d) digits.pop_back();
        spec.default_set = DigitSet::listed(digits);
    }
    return make_constraint(seq, set, spec);
}

}  // namespace kempner::test
