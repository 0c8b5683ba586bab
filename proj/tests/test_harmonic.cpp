#include "kempner/error.hpp"
#include "kempner/harmonic.hpp"
#include "kempner/oracle.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace kempner;
using test::kempner10;
using test::power2_no_zero;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::UnknownSubcommand;
}

Rational oracle_block_sum(const DigitConstraint& c, std::uint64_t k) {
    const auto lo = *c.sequence().base_value_u64(k);
    const auto hi = *c.sequence().base_value_u64(k + 1) - 1;
    return oracle::sum(c, lo, hi);
}

}  // namespace

TEST_CASE("block_bracket examples") {
    const auto k1 = block_bracket(kempner10(), 1);
    CHECK(k1.count == 72);
    CHECK(k1.bracket_lo == Rational(18, 25));  // 72/100
    CHECK(k1.bracket_hi == Rational(36, 5));  // 72/10

    const auto full = test::simple(ConstantRule{10}, IndexSet::all(), {1, 2, 3, 4, 5, 6, 7, 8, 9});
    const auto e = block_bracket(full, 3);
    CHECK(e.count == 0);
    CHECK(e.bracket_lo == 0);
    CHECK(e.bracket_hi == 0);

    const auto p = block_bracket(power2_no_zero(), 1);
    CHECK(p.count == 3);
    CHECK(p.bracket_lo == Rational(3, 8));
    CHECK(p.bracket_hi == Rational(3, 2));
    const Rational s(71, 105);
    CHECK(oracle_block_sum(power2_no_zero(), 1) == s);
    CHECK(p.bracket_lo <= s);
    CHECK(s <= p.bracket_hi);
}

TEST_CASE("partial sums") {
    CHECK(partial_sum_exact(kempner10(), 9).value == Rational(761, 280));
    CHECK(partial_sum_exact(power2_no_zero(), 7).value == Rational(176, 105));
    const auto even = fixed_bits({{0, 0}});
    CHECK(partial_sum_exact(even, 1).value == 0);
    CHECK(partial_sum_exact(even, 1).elements == 0);
    CHECK(partial_sum_exact(even, 4).value == Rational(3, 4));

    // middle of a block, compared with the oracle
    for (std::uint64_t n : {1u, 17u, 99u, 100u, 101u, 555u, 12345u}) {
        CHECK(partial_sum_exact(kempner10(), n).value == oracle::sum(kempner10(), 1, n));
        CHECK(partial_sum_exact(power2_no_zero(), n).value == oracle::sum(power2_no_zero(), 1, n));
    }
    CHECK(partial_sum_between(kempner10(), 95, 1234).value == oracle::sum(kempner10(), 95, 1234));

    const auto t = partial_sum_exact(kempner10(), 100000, 1000);
    CHECK(t.truncated);
    CHECK(t.elements == 1000);
    CHECK(t.value == oracle::reciprocal_sum([] {
              std::vector<std::uint64_t> v = oracle::members(kempner10(), 1, 100000);
              v.resize(1000);
              return v;
          }()));
    CHECK_FALSE(partial_sum_exact(kempner10(), 100000).truncated);
    CHECK(partial_sum_exact(kempner10(), 0).value == 0);
}

TEST_CASE("block reports: cumulative sums, containment and ratio") {
    for (const auto& name : config::preset_names()) {
        const auto c = test::preset(name);
        const auto rows = block_reports(c, 8);
        REQUIRE(rows.size() == 9);
        const auto serial = block_reports(c, 8, false);
        Rational lo = 0, hi = 0;
        for (const auto& r : rows) {
            lo += r.bracket_lo;
            hi += r.bracket_hi;
            CHECK(r.cumulative_lo == lo);
            CHECK(r.cumulative_hi == hi);
            CHECK(r.count == block_count_exact(c, r.k).exact);
            CHECK(r.cumulative_hi == serial[r.k].cumulative_hi);
            if (sgn(r.count) > 0) CHECK(r.bracket_hi / r.bracket_lo == Rational(r.g_k1 / r.g_k));
            if (r.count <= 100'000) {
                const Rational s = block_sum_exact(c, r.k).value;
                CHECK(r.bracket_lo <= s);
                CHECK(s <= r.bracket_hi);
            }
        }
    }
}

TEST_CASE("classify verdicts") {
    const auto k = classify(kempner10());
    CHECK(k.verdict == Verdict::Convergent);
    CHECK(k.rule == RuleFired::BoundedConvergence);
    CHECK(k.margin.delta == Rational(1, 2));

    const auto p = classify(power2_no_zero());
    CHECK(p.verdict == Verdict::Divergent);
    CHECK(p.rule == RuleFired::UnboundedDivergence);
    CHECK(p.margin.threshold_index == 2u);
    CHECK(p.margin.delta == Rational(3, 16));
    CHECK(p.margin.tail_sum == Rational(1, 4));

    const auto d = classify(test::preset("div-log"));
    CHECK(d.verdict == Verdict::Divergent);
    CHECK(d.rule == RuleFired::BoundedDivergence);
    CHECK(d.margin.delta == Rational(2, 5));

    CHECK(classify(test::preset("open-boundary")).verdict == Verdict::Inconclusive);
    CHECK(classify(test::preset("fixed-bits")).verdict == Verdict::Inconclusive);

    const auto full = test::simple(ConstantRule{10}, IndexSet::complement(IndexSet::explicit_set({1, 4})),
                                   {1, 2, 3, 4, 5, 6, 7, 8, 9});
    const auto f = classify(full);
    CHECK(f.verdict == Verdict::FiniteSet);
    CHECK(f.rule == RuleFired::FiniteSet);

    // sparse linear I still beats the logarithmic threshold
    const auto sparse = test::simple(ConstantRule{3}, IndexSet::arithmetic(5, 7), {1});
    CHECK(classify(sparse).verdict == Verdict::Convergent);
    // finite I leaves the tail unconstrained
    CHECK(classify(test::simple(ConstantRule{10}, IndexSet::explicit_set({0, 3}), {9})).verdict == Verdict::Divergent);
}

TEST_CASE("bounded-quotient rule: explicit delta and errors") {
    const auto k = convergence_by_bounded_quotients(kempner10(), Rational(1, 10));
    CHECK(k.verdict == Verdict::Convergent);
    CHECK(k.margin.delta == Rational(1, 10));
    REQUIRE(k.margin.threshold_index);
    REQUIRE(k.margin.asymptotic_index);
    CHECK(*k.margin.threshold_index <= *k.margin.asymptotic_index);

    CHECK(convergence_by_bounded_quotients(test::preset("open-boundary")).verdict == Verdict::Inconclusive);
    CHECK(code_of([] { convergence_by_bounded_quotients(power2_no_zero()); }) == ErrorCode::MissingBoundHint);
    CHECK(code_of([] { convergence_by_bounded_quotients(kempner10(), Rational(0)); }) == ErrorCode::InputOutOfRange);

    // the reported window index satisfies the convergence inequality from there on
    const double lhs_ratio = std::log(10.0 / 9.0);
    for (std::uint64_t kk = *k.margin.threshold_index; kk < 5000; ++kk)
        REQUIRE(static_cast<double>(kk + 1) >= 1.1 * std::log(static_cast<double>(kk)) / lhs_ratio - 1e-9);
}

TEST_CASE("unbounded-quotient rule") {
    const auto p = divergence_by_unbounded_quotients(power2_no_zero());
    CHECK(p.verdict == Verdict::Divergent);
    CHECK(p.margin.threshold_index == 2u);
    CHECK(p.margin.delta == Rational(3, 16));

    CHECK(divergence_by_unbounded_quotients(kempner10()).verdict == Verdict::Inconclusive);

    ForbiddenSpec spec;
    spec.default_set = DigitSet::nonzero();
    const auto finite = make_constraint(make_sequence(PowerRule{2}), IndexSet::all(), spec);
    CHECK(code_of([&] { divergence_by_unbounded_quotients(finite); }) == ErrorCode::SetIsFinite);

    // Power(3) with two forbidden digits: sum 2/3^{i+1} = 1, tail from i >= 1 is 1/3
    const auto p3 = test::simple(PowerRule{3}, IndexSet::all(), {0, 1});
    const auto r = divergence_by_unbounded_quotients(p3);
    CHECK(r.verdict == Verdict::Divergent);
    CHECK(r.margin.threshold_index == 1u);
    CHECK(r.margin.delta == Rational(1, 6));
}

TEST_CASE("lower-bound chain for power2-no-zero") {
    const auto c = power2_no_zero();
    Rational prod = 1, lower = 0, enumerated = 0;
    for (std::uint64_t k = 0; k <= 6; ++k) {
        prod *= Rational(c.sequence().quotient(k) - 1, c.sequence().quotient(k));
        const Rational block = block_sum_exact(c, k).value;
        CHECK(block >= prod / 2);
        lower += prod / 2;
        enumerated += block;
        CHECK(enumerated >= lower);
    }
}

TEST_CASE("tail_upper_estimate") {
    const Rational expected = Rational(10) * (Rational(81, 100) + Rational(729, 1000) + Rational(6561, 10000));
    CHECK(tail_upper_estimate(kempner10(), 1, 3) == expected);
    CHECK(expected == Rational(21951, 1000));

    const auto sparse = test::simple(ConstantRule{10}, IndexSet::explicit_set({50}), {9});
    CHECK(tail_upper_estimate(sparse, 1, 3) == 30);

    CHECK(tail_upper_estimate(test::simple(ConstantRule{2}, IndexSet::all(), {0}), 0, 2) == Rational(7, 4));

    CHECK(code_of([] { tail_upper_estimate(power2_no_zero(), 1, 2); }) == ErrorCode::MissingBoundHint);
    CHECK(code_of([] { tail_upper_estimate(kempner10(), 3, 2); }) == ErrorCode::InputOutOfRange);

    // domination of the exact block sums, for every preset with bounded quotients
    for (const auto& name : config::preset_names()) {
        const auto c = test::preset(name);
        if (!c.sequence().bound_hint()) continue;
        for (std::uint64_t k0 = 1; k0 <= 6; ++k0) {
            Rational s = 0;
            for (std::uint64_t K = k0; K <= 6; ++K) {
                s += block_sum_exact(c, K).value;
                CHECK(s <= tail_upper_estimate(c, k0, K));
            }
        }
    }
}

TEST_CASE("weierstrass_lower") {
    CHECK(weierstrass_lower({}) == 1);
    const std::vector<Rational> two{Rational(1, 2), Rational(1, 4)};
    CHECK(weierstrass_lower(two) == Rational(1, 4));
    CHECK(Rational(3, 8) >= weierstrass_lower(two));
    const std::vector<Rational> bad{Rational(1)};
    CHECK(code_of([&] { weierstrass_lower(bad); }) == ErrorCode::InputOutOfRange);

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> num(0, 1000);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Rational> xs;
        Rational prod = 1;
        for (int i = 0; i < 20; ++i) {
            xs.emplace_back(num(rng), 40'000);
            xs.back().canonicalize();
            prod *= 1 - xs.back();
        }
        const Rational w = weierstrass_lower(xs);
        CHECK(prod >= w);
        CHECK(w >= Rational(1, 2));
    }
}

TEST_CASE("density") {
    CHECK(density(kempner10(), 999) == Rational(728, 999));
    CHECK(density(kempner10(), 9) == Rational(8, 9));
    CHECK(density(test::simple(ConstantRule{10}, IndexSet::explicit_set({0}), {0}), 10) == Rational(9, 10));
    Rational prev = 2;
    for (std::uint64_t j = 1; j <= 6; ++j) {
        const Rational d = density(kempner10(), pow_big(10, j));
        CHECK(d < prev);
        prev = d;
    }
    CHECK_THROWS_AS(density(kempner10(), 0), Error);
}

TEST_CASE("classify is stable under equivalent quotient descriptions") {
    const auto a = classify(test::simple(ExplicitRule{{10}, Extension::RepeatLast}, IndexSet::all(), {9}));
    const auto b = classify(test::simple(ExplicitRule{{10, 10, 10}, Extension::Cycle}, IndexSet::all(), {9}));
    const auto ref = classify(kempner10());
    for (const auto* r : {&a, &b}) {
        CHECK(r->verdict == ref.verdict);
        CHECK(r->rule == ref.rule);
        CHECK(r->margin.delta == ref.margin.delta);
        CHECK(r->margin.threshold_index == ref.margin.threshold_index);
        CHECK(r->margin.asymptotic_index == ref.margin.asymptotic_index);
    }

    const auto e = classify(test::simple(ExplicitRule{{2, 4, 8, 16}, Extension::RepeatLast}, IndexSet::all(), {0}));
    CHECK(e.verdict == Verdict::Convergent);  // bounded by 16 from index 3 on
}
