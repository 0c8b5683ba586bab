#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace kempner {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt to_big(std::uint64_t v) {
    BigInt r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return r;
}

inline std::optional<std::uint64_t> to_u64(const BigInt& v) {
    if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) return std::nullopt;
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, v.get_mpz_t());
    return out;
}

inline BigInt pow_big(std::uint64_t base, std::uint64_t exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), to_big(base).get_mpz_t(), exp);
    return r;
}

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

inline std::string to_string(const Rational& q) { return q.get_str(10); }

/// Parses a nonnegative decimal or an exact fraction "p/q"; decimals such as
/// "0.4" become 2/5. Returns nullopt on malformed input.
std::optional<Rational> parse_rational(const std::string& text);

std::optional<BigInt> parse_bigint(const std::string& text);

/// Fraction kept unreduced while accumulating; reduce() canonicalizes.
struct Fraction {
    BigInt num{0};
    BigInt den{1};

    [[nodiscard]] Rational reduce() const {
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
};

inline Fraction operator+(const Fraction& a, const Fraction& b) {
    return Fraction{a.num * b.den + b.num * a.den, a.den * b.den};
}

/// Sign of a - b without reducing either fraction (denominators positive).
inline int compare(const Fraction& a, const Rational& b) {
    BigInt lhs = a.num * b.get_den();
    BigInt rhs = b.get_num() * a.den;
    return cmp(lhs, rhs);
}

}  // namespace kempner
