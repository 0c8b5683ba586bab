#include "kempner/numeric.hpp"

#include <algorithm>
#include <cctype>

namespace kempner {

namespace {

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

std::optional<BigInt> parse_bigint(const std::string& text) {
    if (!all_digits(text)) return std::nullopt;
    return BigInt(text, 10);
}

std::optional<Rational> parse_rational(const std::string& text) {
    if (auto slash = text.find('/'); slash != std::string::npos) {
        auto num = parse_bigint(text.substr(0, slash));
        auto den = parse_bigint(text.substr(slash + 1));
        if (!num || !den || *den == 0) return std::nullopt;
        Rational q(*num, *den);
        q.canonicalize();
        return q;
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (!all_digits(whole) || !all_digits(frac)) return std::nullopt;
        Rational q(BigInt(whole + frac, 10), pow_big(10, frac.size()));
        q.canonicalize();
        return q;
    }
    auto n = parse_bigint(text);
    if (!n) return std::nullopt;
    return Rational(*n);
}

}  // namespace kempner
