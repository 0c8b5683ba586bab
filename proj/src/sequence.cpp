#include "kempner/sequence.hpp"

#include "kempner/error.hpp"

#include <algorithm>
#include <limits>

namespace kempner {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t explicit_quotient(const ExplicitRule& r, std::uint64_t i) {
    const auto n = r.values.size();
    if (i < n) return r.values[i];
    return r.extension == Extension::RepeatLast ? r.values.back() : r.values[i % n];
}

}  // namespace

QuotientSequence make_sequence(QuotientRule rule, std::optional<std::uint64_t> bound_hint) {
    std::optional<std::uint64_t> certified;
    std::visit(overloaded{
                   [&](const ConstantRule& r) {
                       if (r.d < 2) throw Error(ErrorCode::QuotientTooSmall, "constant quotient must be >= 2");
                       if (r.d == kSaturated) throw Error(ErrorCode::InputOutOfRange, "quotient must be < 2^64 - 1");
                       certified = r.d;
                   },
                   [&](const ExplicitRule& r) {
                       if (r.values.empty()) throw Error(ErrorCode::EmptyExplicitList, "explicit quotient list is empty");
                       for (std::size_t i = 0; i < r.values.size(); ++i) {
                           if (r.values[i] < 2)
                               throw Error(ErrorCode::QuotientTooSmall,
                                           "explicit quotient at index " + std::to_string(i) + " is < 2");
                           if (r.values[i] == kSaturated)
                               throw Error(ErrorCode::InputOutOfRange, "quotient must be < 2^64 - 1");
                       }
                       certified = *std::max_element(r.values.begin(), r.values.end());
                   },
                   [&](const PowerRule& r) {
                       if (r.base < 2) throw Error(ErrorCode::QuotientTooSmall, "power base must be >= 2");
                   },
                   [&](const FactorialRule&) {},
               },
               rule);

    if (bound_hint) {
        if (!certified)
            throw Error(ErrorCode::BoundHintViolated, "rule has unbounded quotients; bound_hint cannot hold");
        if (*bound_hint < *certified)
            throw Error(ErrorCode::BoundHintViolated, "bound_hint " + std::to_string(*bound_hint) +
                                                          " is below quotient " + std::to_string(*certified));
    }

    auto impl = std::make_shared<QuotientSequence::Impl>();
    impl->rule = std::move(rule);
    impl->bound_hint = bound_hint ? bound_hint : certified;

    QuotientSequence probe{impl};
    impl->base_u64.push_back(1);
    for (std::uint64_t k = 0;; ++k) {
        const std::uint64_t d = probe.quotient_u64(k);
        const std::uint64_t g = impl->base_u64.back();
        if (d == kSaturated || g > kSaturated / d) break;
        impl->base_u64.push_back(g * d);
    }
    return probe;
}

bool QuotientSequence::unbounded() const {
    return std::holds_alternative<PowerRule>(rule()) || std::holds_alternative<FactorialRule>(rule());
}

BigInt QuotientSequence::quotient(std::uint64_t i) const {
    return std::visit(overloaded{
                          [](const ConstantRule& r) { return to_big(r.d); },
                          [i](const ExplicitRule& r) { return to_big(explicit_quotient(r, i)); },
                          [i](const PowerRule& r) { return pow_big(r.base, i + 1); },
                          [i](const FactorialRule&) { return to_big(i + 2); },
                      },
                      rule());
}

std::uint64_t QuotientSequence::quotient_u64(std::uint64_t i) const {
    return std::visit(overloaded{
                          [](const ConstantRule& r) { return r.d; },
                          [i](const ExplicitRule& r) { return explicit_quotient(r, i); },
                          [i](const PowerRule& r) {
                              std::uint64_t v = 1;
                              for (std::uint64_t e = 0; e <= i; ++e) {
                                  if (v > kSaturated / r.base) return kSaturated;
                                  v *= r.base;
                              }
                              return v;
                          },
                          [i](const FactorialRule&) { return i >= kSaturated - 2 ? kSaturated : i + 2; },
                      },
                      rule());
}

BigInt QuotientSequence::base_value(std::uint64_t k) const {
    if (k < impl_->base_u64.size()) return to_big(impl_->base_u64[k]);
    return std::visit(overloaded{
                          [k](const ConstantRule& r) { return pow_big(r.d, k); },
                          [k](const ExplicitRule& r) {
                              const std::uint64_t n = r.values.size();
                              BigInt g = 1;
                              if (r.extension == Extension::RepeatLast) {
                                  for (std::uint64_t i = 0; i < std::min(k, n); ++i) g *= to_big(r.values[i]);
                                  if (k > n) g *= pow_big(r.values.back(), k - n);
                                  return g;
                              }
                              BigInt cycle = 1;
                              for (auto v : r.values) cycle *= to_big(v);
                              mpz_pow_ui(g.get_mpz_t(), cycle.get_mpz_t(), k / n);
                              for (std::uint64_t i = 0; i < k % n; ++i) g *= to_big(r.values[i]);
                              return g;
                          },
                          [k](const PowerRule& r) {
                              // exponent k(k+1)/2 without intermediate overflow
                              const std::uint64_t e = (k % 2 == 0) ? (k / 2) * (k + 1) : k * ((k + 1) / 2);
                              return pow_big(r.base, e);
                          },
                          [k](const FactorialRule&) {
                              BigInt g;
                              mpz_fac_ui(g.get_mpz_t(), k + 1);
                              return g;
                          },
                      },
                      rule());
}

std::optional<std::uint64_t> QuotientSequence::base_value_u64(std::uint64_t k) const {
    if (k < impl_->base_u64.size()) return impl_->base_u64[k];
    return std::nullopt;
}

std::uint64_t QuotientSequence::block_index(const BigInt& n) const {
    if (auto small = to_u64(n)) {
        const auto& table = impl_->base_u64;
        auto it = std::upper_bound(table.begin(), table.end(), *small);
        if (it != table.end()) return static_cast<std::uint64_t>(it - table.begin()) - 1;
    }
    std::uint64_t k = impl_->base_u64.size() - 1;
    BigInt g = base_value(k);
    for (;;) {
        BigInt next = g * quotient(k);
        if (next > n) return k;
        g = std::move(next);
        ++k;
    }
}

std::string QuotientSequence::describe() const {
    std::string out = std::visit(overloaded{
                                     [](const ConstantRule& r) { return "constant(" + std::to_string(r.d) + ")"; },
                                     [](const ExplicitRule& r) {
                                         std::string s = "explicit(";
                                         for (std::size_t i = 0; i < r.values.size(); ++i)
                                             s += (i ? "," : "") + std::to_string(r.values[i]);
                                         return s + (r.extension == Extension::Cycle ? "; cycle)" : "; repeat-last)");
                                     },
                                     [](const PowerRule& r) { return "power(" + std::to_string(r.base) + ")"; },
                                     [](const FactorialRule&) { return std::string("factorial"); },
                                 },
                                 rule());
    if (bound_hint()) out += " d<=" + std::to_string(*bound_hint());
    return out;
}

Numeral to_digits(const QuotientSequence& seq, const BigInt& n) {
    if (sgn(n) <= 0) throw Error(ErrorCode::NonPositiveInput, "to_digits requires n >= 1");
    Numeral out{{}, seq};
    BigInt rest = n;
    for (std::uint64_t i = 0; sgn(rest) > 0; ++i) {
        const BigInt d = seq.quotient(i);
        BigInt digit;
        mpz_fdiv_qr(rest.get_mpz_t(), digit.get_mpz_t(), rest.get_mpz_t(), d.get_mpz_t());
        out.digits.push_back(std::move(digit));
    }
    return out;
}

BigInt from_digits(const Numeral& numeral) {
    const auto& digits = numeral.digits;
    if (digits.empty()) throw Error(ErrorCode::ZeroLeadingDigit, "numeral has no digits");
    for (std::uint64_t i = 0; i < digits.size(); ++i) {
        if (sgn(digits[i]) < 0 || digits[i] >= numeral.sequence.quotient(i))
            throw Error(ErrorCode::DigitOutOfRange, "digit " + std::to_string(i) + " outside [0, d_i - 1]");
    }
    if (sgn(digits.back()) == 0) throw Error(ErrorCode::ZeroLeadingDigit, "leading digit is zero");

    // Horner from the top: n = (...(c_k d_{k-1} + c_{k-1}) d_{k-2} + ...) + c_0
    BigInt n = digits.back();
    for (std::uint64_t i = digits.size() - 1; i-- > 0;) {
        n *= numeral.sequence.quotient(i);
        n += digits[i];
    }
    return n;
}

void to_digits_u64(const QuotientSequence& seq, std::uint64_t n, std::vector<std::uint64_t>& digits) {
    digits.clear();
    for (std::uint64_t i = 0; n > 0; ++i) {
        const std::uint64_t d = seq.quotient_u64(i);
        if (d == kSaturated) {
            digits.push_back(n);
            return;
        }
        digits.push_back(n % d);
        n /= d;
    }
}

}  // namespace kempner
