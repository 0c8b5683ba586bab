#include "kempner/harmonic.hpp"

#include "kempner/error.hpp"
#include "kempner/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kempner {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Rational ratio(const BigInt& num, const BigInt& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational rpow(const Rational& r, std::uint64_t e) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), r.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), r.get_den_mpz_t(), e);
    out.canonicalize();
    return out;
}

std::uint64_t clamp_u64(const BigInt& v) {
    if (sgn(v) <= 0) return 0;
    return to_u64(v).value_or(std::numeric_limits<std::uint64_t>::max());
}

std::uint64_t ceil_index(double x) {
    if (!(x < 1e18)) return std::numeric_limits<std::uint64_t>::max();
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(x)));
}

// ------------------------------------------------- bounded-quotient tests

enum class Side { Convergence, Divergence };

// Inequalities at a single k >= 1 for delta = p/q:
//   convergence: I >= (1+delta) ln k / ln(d/(d-1))  <=>  k^(q+p) (d-1)^(Iq) <= d^(Iq)
//   divergence:  I <= (1-delta) ln k / ln d          <=>  d^(Iq) <= k^(q-p)
class ThresholdTest {
public:
    ThresholdTest(Side side, std::uint64_t d, const Rational& delta)
        : side_(side), d_(d), delta_(delta), delta_d_(delta.get_d()) {
        log_ratio_ = std::log1p(1.0 / static_cast<double>(d - 1));
        log_d_ = std::log(static_cast<double>(d));
    }

    [[nodiscard]] double threshold(std::uint64_t k) const {
        const double lk = std::log(static_cast<double>(k));
        return side_ == Side::Convergence ? (1 + delta_d_) * lk / log_ratio_ : (1 - delta_d_) * lk / log_d_;
    }

    [[nodiscard]] bool holds(std::uint64_t k, std::uint64_t count) const {
        const double t = threshold(k);
        const double diff = side_ == Side::Convergence ? static_cast<double>(count) - t : t - static_cast<double>(count);
        if (std::abs(diff) > 1e-9 * std::max(1.0, std::abs(t))) return diff > 0;
        return holds_exact(k, count);
    }

private:
    [[nodiscard]] bool holds_exact(std::uint64_t k, std::uint64_t count) const {
        const auto p = to_u64(delta_.get_num());
        const auto q = to_u64(delta_.get_den());
        if (!p || !q || *q > 4096) return true;  // double already says it is a tie; accept
        const std::uint64_t e = count * *q;
        if (side_ == Side::Convergence) {
            return pow_big(k, *q + *p) * pow_big(d_ - 1, e) <= pow_big(d_, e);
        }
        if (*p > *q) return false;
        return pow_big(d_, e) <= pow_big(k, *q - *p);
    }

    Side side_;
    std::uint64_t d_;
    Rational delta_;
    double delta_d_;
    double log_ratio_;
    double log_d_;
};

struct Certificate {
    bool certified = false;
    std::optional<std::uint64_t> asymptotic_index;
    std::string reason;
};

bool exact_pow_greater(std::uint64_t a, std::uint64_t ea, std::uint64_t b, std::uint64_t eb, std::uint64_t c,
                       std::uint64_t ec) {
    // a^ea > b^eb * c^ec
    return pow_big(a, ea) > pow_big(b, eb) * pow_big(c, ec);
}

Certificate certify(Side side, const IndexGrowth& g, std::uint64_t d, const Rational& delta) {
    Certificate cert;
    const double dd = delta.get_d();
    const double log_ratio = std::log1p(1.0 / static_cast<double>(d - 1));
    const double log_d = std::log(static_cast<double>(d));
    const auto p = to_u64(delta.get_num());
    const auto q = to_u64(delta.get_den());
    const bool small_delta = p && q && *q <= 4096;

    using K = IndexGrowth::Kind;
    if (side == Side::Convergence) {
        if (g.kind == K::Linear) {
            // I(k) >= rho k - off - s log_sb k, which is eventually above any multiple of log k;
            // f(k) = rho k - off - beta ln k increases once k > beta / rho
            const double rho = g.density.get_d();
            const double off = g.offset.get_d();
            const double beta = (g.log_slack ? g.log_slack / std::log(static_cast<double>(g.slack_base)) : 0.0) +
                                (1 + dd) / log_ratio;
            auto f = [&](double k) { return rho * k - off - beta * std::log(k); };
            std::uint64_t lo = std::max<std::uint64_t>(2, ceil_index(beta / rho));
            std::uint64_t hi = lo;
            while (f(static_cast<double>(hi)) < 1e-9) {
                lo = hi;
                hi *= 2;
            }
            while (lo < hi) {
                const std::uint64_t mid = lo + (hi - lo) / 2;
                if (f(static_cast<double>(mid)) >= 1e-9) hi = mid;
                else lo = mid + 1;
            }
            cert.certified = true;
            cert.asymptotic_index = hi;
            cert.reason = "I(k) grows linearly (density " + to_string(g.density) + "), the threshold only like log k";
        } else if (g.kind == K::Logarithmic) {
            // log_b k >= (1+delta) ln k / ln(d/(d-1))  <=>  (d/(d-1))^q >= b^(q+p)
            const bool ok = small_delta ? exact_pow_greater(d, *q, g.log_base, *q + *p, d - 1, *q)
                                        : log_ratio > (1 + dd) * std::log(static_cast<double>(g.log_base));
            cert.certified = ok;
            if (ok) cert.asymptotic_index = 1;
            cert.reason = ok ? "log_b k dominates the threshold for every k"
                             : "I(k) ~ log_" + std::to_string(g.log_base) + " k is below the convergence threshold";
        } else {
            cert.reason = "I(k) is bounded";
        }
        return cert;
    }

    if (g.kind == K::Bounded) {
        // I(k) <= m <= (1-delta) log_d k once k >= d^(m/(1-delta))
        cert.certified = true;
        cert.asymptotic_index = g.size == 0 ? 1 : ceil_index(std::exp(static_cast<double>(g.size) * log_d / (1 - dd)));
        cert.reason = "I(k) <= " + std::to_string(g.size) + " for all k";
    } else if (g.kind == K::Logarithmic) {
        // log_b k + 1 <= (1-delta) log_d k  for ln k >= 1/c,  c = (1-delta)/ln d - 1/ln b > 0  <=>  b^(q-p) > d^q
        const double log_b = std::log(static_cast<double>(g.log_base));
        const bool ok = dd < 1 && (small_delta ? exact_pow_greater(g.log_base, *q - *p, d, *q, 1, 0)
                                               : (1 - dd) * log_b > log_d);
        cert.certified = ok;
        if (ok) {
            const double c = (1 - dd) / log_d - 1 / log_b;
            cert.asymptotic_index = ceil_index(std::exp(1 / c));
            cert.reason = "I(k) <= log_" + std::to_string(g.log_base) + " k + 1 and the base exceeds d^(1/(1-delta))";
        } else {
            cert.reason = "I(k) ~ log_" + std::to_string(g.log_base) + " k is above the divergence threshold";
        }
    } else {
        cert.reason = "I(k) grows linearly";
    }
    return cert;
}

// ------------------------------------------------ unbounded-quotient helpers

Rational term_at(const DigitConstraint& c, std::uint64_t i) {
    const BigInt d = c.sequence().quotient(i);
    return ratio(c.forbidden(i)->size(d), d);
}

std::uint64_t last_override(const DigitConstraint& c) {
    const auto& o = c.forbidden_spec().overrides;
    return o.empty() ? 0 : o.rbegin()->first + 1;
}

// Sum over i in I, i >= from, of |U_i| / d_i; exact or an upper bound.
std::optional<TailSum> unbounded_tail(const DigitConstraint& c, std::uint64_t from) {
    const IndexSet& set = c.index_set();
    const auto& seq = c.sequence();
    const DigitSet& u = *c.forbidden_spec().default_set;
    const std::uint64_t size = u.digits().size();
    const std::uint64_t cut = std::max(from, last_override(c));

    Rational head = 0;
    for (auto i = set.next_member(from); i && *i < cut; i = set.next_member(*i + 1)) head += term_at(c, *i);

    if (const auto* power = std::get_if<PowerRule>(&seq.rule())) {
        // sum of size / b^(i+1) = (size / b) * sum (1/b)^i
        const TailSum geo = set.geometric_tail(cut, Rational(1, power->base));
        return TailSum{head + Rational(size, power->base) * geo.value, geo.exact};
    }
    if (std::holds_alternative<FactorialRule>(seq.rule()) && set.growth().kind == IndexGrowth::Kind::Logarithmic) {
        // members b^j: size/(b^j + 2) < size * b^-j; list a few exactly, bound the rest geometrically
        const std::uint64_t base = set.growth().log_base;
        auto i = set.next_member(cut);
        for (int listed = 0; i && listed < 8 && *i < (std::uint64_t{1} << 56); ++listed) {
            head += term_at(c, *i);
            i = set.next_member(*i + 1);
        }
        if (!i) return TailSum{head, false};
        Rational rest(size * base, base - 1);
        rest /= to_big(*i);
        return TailSum{head + rest, false};
    }
    return std::nullopt;
}

}  // namespace

// ------------------------------------------------------------- brackets

BlockReport block_bracket(const DigitConstraint& c, std::uint64_t k) { return block_reports(c, k, false).back(); }

std::vector<BlockReport> block_reports(const DigitConstraint& c, std::uint64_t max_k, bool parallel) {
    auto reports = kernels::map_indices<BlockReport>(
        max_k + 1,
        [&c](std::uint64_t k) {
            BlockReport r;
            r.k = k;
            r.g_k = c.sequence().base_value(k);
            r.g_k1 = c.sequence().base_value(k + 1);
            r.count = block_count_exact(c, k).exact;
            r.bracket_lo = ratio(r.count, r.g_k1);
            r.bracket_hi = ratio(r.count, r.g_k);
            return r;
        },
        parallel);
    Rational lo = 0, hi = 0;
    for (auto& r : reports) {
        lo += r.bracket_lo;
        hi += r.bracket_hi;
        r.cumulative_lo = lo;
        r.cumulative_hi = hi;
    }
    return reports;
}

// ---------------------------------------------------------- partial sums

PartialSum partial_sum_between(const DigitConstraint& c, const BigInt& lo_in, const BigInt& hi, std::uint64_t budget) {
    PartialSum out;
    const BigInt lo = lo_in < 1 ? BigInt(1) : lo_in;
    if (hi < lo) return out;

    const auto& seq = c.sequence();
    const std::uint64_t k_lo = seq.block_index(lo);
    const std::uint64_t k_hi = seq.block_index(hi);
    std::vector<BigInt> values;
    std::uint64_t remaining = budget;

    for (std::uint64_t k = k_lo; k <= k_hi && !out.truncated; ++k) {
        const BigInt g = seq.base_value(k);
        const BigInt before_block = count_upto(c, g - 1);
        const BigInt skip = lo > g ? BigInt(count_upto(c, lo - 1) - before_block) : BigInt(0);
        const BigInt upto =
            hi < seq.base_value(k + 1) - 1 ? BigInt(count_upto(c, hi) - before_block) : block_count_exact(c, k).exact;
        if (upto <= skip) continue;

        const BigInt wanted = upto - skip;
        const std::uint64_t take = wanted > to_big(remaining) ? remaining : clamp_u64(wanted);
        out.truncated = wanted > to_big(remaining);
        const std::uint64_t first = clamp_u64(skip);
        std::uint64_t index = 0;
        enumerate_block(c, k, clamp_u64(skip + take), [&](const BigInt& v) {
            if (index++ >= first) values.push_back(v);
        });
        remaining -= take;
    }

    out.elements = values.size();
    out.value = kernels::reciprocal_sum_parallel(values).reduce();
    return out;
}

PartialSum partial_sum_exact(const DigitConstraint& c, const BigInt& n_max, std::uint64_t budget) {
    return partial_sum_between(c, 1, n_max, budget);
}

PartialSum block_sum_exact(const DigitConstraint& c, std::uint64_t k, std::uint64_t budget) {
    const auto& seq = c.sequence();
    return partial_sum_between(c, seq.base_value(k), seq.base_value(k + 1) - 1, budget);
}

// -------------------------------------------------------- classification

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Convergent: return "Convergent";
        case Verdict::Divergent: return "Divergent";
        case Verdict::FiniteSet: return "FiniteSet";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

std::string_view to_string(RuleFired r) {
    switch (r) {
        case RuleFired::None: return "none";
        case RuleFired::FiniteSet: return "finite-set";
        case RuleFired::BoundedConvergence: return "bounded-quotients/convergence";
        case RuleFired::BoundedDivergence: return "bounded-quotients/divergence";
        case RuleFired::UnboundedDivergence: return "unbounded-quotients/divergence";
    }
    return "none";
}

std::vector<Rational> default_delta_grid() {
    return {Rational(1, 2), Rational(2, 5), Rational(1, 4), Rational(1, 10), Rational(1, 20)};
}

Classification convergence_by_bounded_quotients(const DigitConstraint& c, std::optional<Rational> delta,
                                                std::uint64_t k_window) {
    const auto bound = c.sequence().bound_hint();
    if (!bound) throw Error(ErrorCode::MissingBoundHint, "sequence " + c.sequence().describe() + " has no uniform bound");
    const std::uint64_t d = *bound;
    if (delta && sgn(*delta) <= 0) throw Error(ErrorCode::InputOutOfRange, "delta must be > 0");

    const IndexGrowth growth = c.index_set().growth();
    const std::vector<Rational> grid = delta ? std::vector<Rational>{*delta} : default_delta_grid();
    k_window = std::max<std::uint64_t>(k_window, 2);

    Classification out;
    for (Side side : {Side::Convergence, Side::Divergence}) {
        for (const Rational& dl : grid) {
            if (side == Side::Divergence && dl >= 1) continue;
            const Certificate cert = certify(side, growth, d, dl);
            if (!cert.certified) {
                if (&dl == &grid.front() || delta) out.notes.push_back(cert.reason);
                continue;
            }

            // spot-check: smallest k0 with the inequality on all of [k0, window]
            const ThresholdTest test(side, d, dl);
            std::optional<std::uint64_t> verified;
            for (std::uint64_t k = k_window; k >= 1; --k) {
                if (!test.holds(k, c.index_set().count(k))) break;
                verified = k;
            }
            if (cert.asymptotic_index && verified && *cert.asymptotic_index <= k_window && *verified > *cert.asymptotic_index) {
                out.notes.push_back("window check contradicts the growth certificate at delta=" + to_string(dl));
                continue;
            }

            const double t = test.threshold(k_window);
            const double count = static_cast<double>(c.index_set().count(k_window));
            out.verdict = side == Side::Convergence ? Verdict::Convergent : Verdict::Divergent;
            out.rule = side == Side::Convergence ? RuleFired::BoundedConvergence : RuleFired::BoundedDivergence;
            out.margin.delta = dl;
            out.margin.threshold_index = verified;
            out.margin.asymptotic_index = cert.asymptotic_index;
            out.margin.window = k_window;
            out.margin.slack = side == Side::Convergence ? count - t : t - count;
            out.notes.push_back(cert.reason);
            if (!verified) out.notes.push_back("threshold not reached inside the spot-check window");
            return out;
        }
    }

    if (growth.kind == IndexGrowth::Kind::Logarithmic) {
        if (growth.log_base == d)
            out.notes.push_back("I(k) ~ log_d k is the open boundary case; no verdict");
        else if (growth.log_base < d)
            out.notes.push_back("I(k) ~ log_" + std::to_string(growth.log_base) +
                                " k lies between the convergence and divergence thresholds");
        else
            out.notes.push_back("divergence needs a delta below the search grid; pass an explicit delta");
    }
    return out;
}

Classification divergence_by_unbounded_quotients(const DigitConstraint& c, std::uint64_t i_window) {
    const Finiteness fin = is_finite_set(c);
    if (fin == Finiteness::Finite) throw Error(ErrorCode::SetIsFinite, "the missing-digits set is finite");
    if (fin == Finiteness::Unknown) throw Error(ErrorCode::SetFinitenessUnknown, "finiteness of the set is not certified");

    Classification out;
    const IndexSet& set = c.index_set();
    if (set.is_finite()) {
        out.notes.push_back("I is finite; the unbounded-quotient rule needs infinite I");
        return out;
    }
    const DigitSet& u = *c.forbidden_spec().default_set;
    if (u.is_nonzero_range()) {
        out.notes.push_back("|U_i|/d_i = 1 - 1/d_i on infinitely many i, so the sum of |U_i|/d_i diverges");
        return out;
    }
    if (!c.sequence().unbounded()) {
        out.notes.push_back("quotients are bounded, so |U_i|/d_i >= 1/d and the sum of |U_i|/d_i diverges");
        return out;
    }
    if (std::holds_alternative<FactorialRule>(c.sequence().rule()) &&
        set.growth().kind != IndexGrowth::Kind::Logarithmic) {
        out.notes.push_back("d_i = i+2 on a set of positive density: the sum of |U_i|/d_i diverges like a harmonic series");
        return out;
    }

    const Rational half(1, 2);
    std::optional<std::uint64_t> i0;
    TailSum tail;
    for (auto i = set.next_member(0); i && *i <= i_window; i = set.next_member(*i + 1)) {
        auto t = unbounded_tail(c, *i);
        if (!t) break;
        if (t->value < half) {
            i0 = *i;
            tail = *t;
            break;
        }
    }
    if (!i0) {
        out.notes.push_back("no i0 <= " + std::to_string(i_window) + " with tail sum below 1/2");
        return out;
    }

    Rational product = 1;
    for (auto i = set.next_member(0); i && *i < *i0; i = set.next_member(*i + 1)) product *= 1 - term_at(c, *i);

    // spot-check the product inequality on the first stretch past i0
    std::vector<Rational> xs;
    Rational prod_tail = 1;
    for (auto i = set.next_member(*i0); i && xs.size() < 64; i = set.next_member(*i + 1)) {
        xs.push_back(term_at(c, *i));
        prod_tail *= 1 - xs.back();
    }
    if (prod_tail < weierstrass_lower(xs) || weierstrass_lower(xs) <= half)
        out.notes.push_back("product spot-check past i0 failed");

    out.verdict = Verdict::Divergent;
    out.rule = RuleFired::UnboundedDivergence;
    out.margin.threshold_index = i0;
    out.margin.delta = half * product;
    out.margin.tail_sum = tail.value;
    out.margin.tail_exact = tail.exact;
    out.margin.window = i_window;
    out.notes.push_back(std::string("sum of |U_i|/d_i converges; tail from i0 is ") + (tail.exact ? "" : "at most ") +
                        to_string(tail.value));
    return out;
}

Classification classify(const DigitConstraint& c, std::optional<Rational> delta) {
    std::vector<std::string> attempts;
    const Finiteness fin = is_finite_set(c);
    if (fin == Finiteness::Finite) {
        Classification out;
        out.verdict = Verdict::FiniteSet;
        out.rule = RuleFired::FiniteSet;
        out.notes.push_back("I is cofinite and U_i = [1, d_i - 1] for all large i");
        return out;
    }
    if (fin == Finiteness::Unknown) attempts.push_back("finiteness: no certificate");

    auto merge = [&attempts](Classification r) {
        attempts.insert(attempts.end(), r.notes.begin(), r.notes.end());
        r.notes = attempts;
        return r;
    };

    if (c.sequence().bound_hint()) {
        auto r = convergence_by_bounded_quotients(c, delta);
        if (r.verdict != Verdict::Inconclusive) return merge(std::move(r));
        for (auto& n : r.notes) attempts.push_back("bounded quotients: " + n);
    } else {
        attempts.push_back("bounded quotients: sequence has no uniform bound");
    }

    if (fin == Finiteness::Infinite) {
        auto r = divergence_by_unbounded_quotients(c);
        if (r.verdict != Verdict::Inconclusive) return merge(std::move(r));
        for (auto& n : r.notes) attempts.push_back("unbounded quotients: " + n);
    } else {
        attempts.push_back("unbounded quotients: needs A certified infinite");
    }

    Classification out;
    out.notes = std::move(attempts);
    return out;
}

// ------------------------------------------------------------- utilities

Rational tail_upper_estimate(const DigitConstraint& c, std::uint64_t k0, std::uint64_t K) {
    const auto bound = c.sequence().bound_hint();
    if (!bound) throw Error(ErrorCode::MissingBoundHint, "tail estimate needs a uniform bound on quotients");
    if (k0 > K) throw Error(ErrorCode::InputOutOfRange, "k0 must not exceed K");
    const Rational r(*bound - 1, *bound);
    Rational sum = 0;
    for (std::uint64_t k = k0; k <= K; ++k) sum += rpow(r, c.index_set().count(k));
    return Rational(to_big(*bound)) * sum;
}

Rational weierstrass_lower(std::span<const Rational> xs) {
    Rational out = 1;
    for (const auto& x : xs) {
        if (sgn(x) < 0 || x >= 1) throw Error(ErrorCode::InputOutOfRange, "x_i must lie in [0, 1)");
        out -= x;
    }
    return out;
}

Rational density(const DigitConstraint& c, const BigInt& n) {
    if (sgn(n) <= 0) throw Error(ErrorCode::NonPositiveInput, "density needs n >= 1");
    return ratio(count_upto(c, n), n);
}

}  // namespace kempner
