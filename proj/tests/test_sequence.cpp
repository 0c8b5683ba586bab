#include "kempner/error.hpp"
#include "kempner/sequence.hpp"

#include <doctest.h>

#include <map>
#include <random>

using namespace kempner;

namespace {

std::vector<QuotientSequence> families() {
    return {make_sequence(ConstantRule{10}), make_sequence(ConstantRule{2}), make_sequence(PowerRule{2}),
            make_sequence(FactorialRule{}), make_sequence(ExplicitRule{{3, 5, 2}, Extension::Cycle}),
            make_sequence(ExplicitRule{{7, 2}, Extension::RepeatLast})};
}

std::vector<BigInt> digits(std::initializer_list<int> ds) {
    std::vector<BigInt> out;
    for (int d : ds) out.emplace_back(d);
    return out;
}

}  // namespace

TEST_CASE("make_sequence validates quotients") {
    CHECK(make_sequence(ConstantRule{10}).quotient(123) == 10);
    const auto p = make_sequence(PowerRule{2});
    CHECK(p.quotient(0) == 2);
    CHECK(p.quotient(1) == 4);
    CHECK(p.quotient(2) == 8);

    auto code_of = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::UnknownSubcommand;
    };
    CHECK(code_of([] { make_sequence(ConstantRule{1}); }) == ErrorCode::QuotientTooSmall);
    CHECK(code_of([] { make_sequence(ExplicitRule{{}, Extension::Cycle}); }) == ErrorCode::EmptyExplicitList);
    CHECK(code_of([] { make_sequence(ExplicitRule{{3, 1}, Extension::Cycle}); }) == ErrorCode::QuotientTooSmall);
    CHECK(code_of([] { make_sequence(PowerRule{1}); }) == ErrorCode::QuotientTooSmall);
    CHECK(code_of([] { make_sequence(ConstantRule{10}, 9); }) == ErrorCode::BoundHintViolated);
    CHECK(code_of([] { make_sequence(FactorialRule{}, 100); }) == ErrorCode::BoundHintViolated);
}

TEST_CASE("bound hints") {
    CHECK(make_sequence(ConstantRule{10}).bound_hint() == 10u);
    CHECK(make_sequence(ConstantRule{10}, 12).bound_hint() == 12u);
    CHECK(make_sequence(ExplicitRule{{3, 9, 4}, Extension::Cycle}).bound_hint() == 9u);
    CHECK_FALSE(make_sequence(PowerRule{3}).bound_hint());
    CHECK(make_sequence(FactorialRule{}).unbounded());
}

TEST_CASE("base_value examples") {
    CHECK(make_sequence(ConstantRule{10}).base_value(3) == 1000);
    CHECK(make_sequence(PowerRule{2}).base_value(3) == 64);
    CHECK(make_sequence(FactorialRule{}).base_value(3) == 2 * 3 * 4);
    for (const auto& s : families()) CHECK(s.base_value(0) == 1);
    // Power(2) passes 64 bits at k = 11
    const auto p = make_sequence(PowerRule{2});
    CHECK(p.base_value_u64(10));
    CHECK_FALSE(p.base_value_u64(11));
    CHECK(p.base_value(11) == pow_big(2, 66));
}

TEST_CASE("base_value agrees with the running product past the 64-bit table") {
    for (const auto& s : families()) {
        BigInt g = 1;
        for (std::uint64_t k = 0; k <= 70; ++k) {
            CHECK(s.base_value(k) == g);
            g *= s.quotient(k);
        }
    }
}

TEST_CASE("divisibility chain for k <= 64") {
    for (const auto& s : families()) {
        for (std::uint64_t k = 0; k < 64; ++k) {
            const BigInt a = s.base_value(k), b = s.base_value(k + 1);
            CHECK(b > a);
            CHECK(mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0);
        }
    }
}

TEST_CASE("to_digits and from_digits examples") {
    const auto dec = make_sequence(ConstantRule{10});
    const auto fac = make_sequence(FactorialRule{});
    const auto pow2 = make_sequence(PowerRule{2});
    CHECK(to_digits(dec, 409).digits == digits({9, 0, 4}));
    CHECK(to_digits(fac, 10).digits == digits({0, 2, 1}));
    CHECK(to_digits(pow2, 7).digits == digits({1, 3}));

    CHECK(from_digits(Numeral{digits({9, 0, 4}), dec}) == 409);
    CHECK(from_digits(Numeral{digits({0, 2, 1}), fac}) == 10);
    for (const auto& s : families()) CHECK(from_digits(Numeral{digits({1}), s}) == 1);

    CHECK_THROWS_AS(to_digits(dec, 0), Error);
    auto code = [](const Numeral& n) {
        try {
            from_digits(n);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::UnknownSubcommand;
    };
    CHECK(code(Numeral{digits({10}), dec}) == ErrorCode::DigitOutOfRange);
    CHECK(code(Numeral{digits({1, 0}), dec}) == ErrorCode::ZeroLeadingDigit);
    CHECK(code(Numeral{digits({0, 4}), pow2}) == ErrorCode::DigitOutOfRange);
}

TEST_CASE("round trip, uniqueness and block partition on [1, 10^5]") {
    for (const auto& s : families()) {
        std::map<std::vector<BigInt>, std::uint64_t> seen;
        std::vector<std::uint64_t> small;
        for (std::uint64_t n = 1; n <= 100'000; n += (n < 5000 ? 1 : 7)) {
            const Numeral num = to_digits(s, n);
            REQUIRE(from_digits(num) == n);
            for (std::uint64_t i = 0; i < num.digits.size(); ++i) REQUIRE(num.digits[i] < s.quotient(i));
            REQUIRE(num.digits.back() != 0);
            REQUIRE(seen.emplace(num.digits, n).second);

            const std::uint64_t k = num.top_index();
            REQUIRE(s.base_value(k) <= n);
            REQUIRE(n < s.base_value(k + 1));
            REQUIRE(s.block_index(n) == k);

            to_digits_u64(s, n, small);
            REQUIRE(small.size() == num.digits.size());
            for (std::size_t i = 0; i < small.size(); ++i) REQUIRE(to_big(small[i]) == num.digits[i]);
        }
    }
}

TEST_CASE("round trip for large integers") {
    std::mt19937_64 rng(7);
    gmp_randclass gen(gmp_randinit_default);
    gen.seed(11);
    for (const auto& s : families()) {
        for (int t = 0; t < 50; ++t) {
            const BigInt n = gen.get_z_bits(300) + 1;
            const Numeral num = to_digits(s, n);
            CHECK(from_digits(num) == n);
            CHECK(s.block_index(n) == num.top_index());
        }
    }
}
