#include "kempner/constraint.hpp"

#include "kempner/error.hpp"

#include <algorithm>
#include <limits>

namespace kempner {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string position(std::uint64_t i) { return "position " + std::to_string(i); }

void validate_at(const DigitSet& u, std::uint64_t i, const BigInt& d) {
    if (u.is_nonzero_range()) return;
    if (u.digits().empty()) throw Error(ErrorCode::EmptyForbiddenSet, "forbidden set at " + position(i) + " is empty");
    if (to_big(u.digits().back()) >= d)
        throw Error(ErrorCode::DigitOutOfRange,
                    "forbidden digit " + std::to_string(u.digits().back()) + " at " + position(i) + " exceeds d_i - 1");
    if (to_big(u.digits().size()) >= d)
        throw Error(ErrorCode::ForbiddenSetNotProper, "forbidden set at " + position(i) + " covers [0, d_i - 1]");
}

// First member of I at or after `from` that has no override.
std::optional<std::uint64_t> next_default_index(const IndexSet& set, const ForbiddenSpec& spec, std::uint64_t from) {
    for (auto i = set.next_member(from); i; i = set.next_member(*i + 1)) {
        if (!spec.overrides.contains(*i)) return i;
        if (*i == std::numeric_limits<std::uint64_t>::max()) break;
    }
    return std::nullopt;
}

void validate_default(const QuotientSequence& seq, const IndexSet& set, const ForbiddenSpec& spec) {
    const DigitSet& u = *spec.default_set;
    if (u.is_nonzero_range()) return;
    if (u.digits().empty()) throw Error(ErrorCode::EmptyForbiddenSet, "default forbidden set is empty");

    const auto first = next_default_index(set, spec, 0);
    if (!first) return;

    std::visit(overloaded{
                   [&](const ConstantRule&) { validate_at(u, *first, seq.quotient(*first)); },
                   [&](const ExplicitRule& r) {
                       const std::uint64_t n = r.values.size();
                       for (auto i = first; i && *i < n; i = next_default_index(set, spec, *i + 1))
                           validate_at(u, *i, seq.quotient(*i));
                       auto tail = next_default_index(set, spec, n);
                       if (!tail) return;
                       if (r.extension == Extension::RepeatLast) {
                           validate_at(u, *tail, seq.quotient(*tail));
                       } else if (set.is_finite()) {
                           for (auto i = tail; i; i = next_default_index(set, spec, *i + 1))
                               validate_at(u, *i, seq.quotient(*i));
                       } else {
                           // an infinite I may reach every residue of the cycle
                           for (std::uint64_t j = 0; j < n; ++j) validate_at(u, n + j, to_big(r.values[j]));
                       }
                   },
                   // strictly increasing quotients: the first unoverridden index is the binding one
                   [&](const PowerRule&) { validate_at(u, *first, seq.quotient(*first)); },
                   [&](const FactorialRule&) { validate_at(u, *first, seq.quotient(*first)); },
               },
               seq.rule());
}

constexpr std::uint64_t kMaterializeLimit = 1u << 16;

// Allowed digits at one position, walked in increasing order. Small radices
// are listed up front; large ones step through first_allowed.
template <class T>
class DigitCursor {
public:
    DigitCursor(const DigitConstraint& c, std::uint64_t i, bool leading) : c_(c), i_(i), floor_(leading ? 1 : 0) {
        const std::uint64_t d = c.sequence().quotient_u64(i);
        if (d <= kMaterializeLimit) {
            materialized_ = true;
            for (std::uint64_t x = floor_; x < d; ++x)
                if (c.digit_allowed(i, x)) list_.push_back(static_cast<T>(x));
        }
    }

    bool reset() {
        if (materialized_) {
            pos_ = 0;
            if (list_.empty()) return false;
            value_ = list_[0];
            return true;
        }
        auto first = c_.first_allowed(i_, BigInt(floor_));
        if (!first) return false;
        big_ = std::move(*first);
        value_ = convert(big_);
        return true;
    }

    bool advance() {
        if (materialized_) {
            if (pos_ + 1 >= list_.size()) return false;
            value_ = list_[++pos_];
            return true;
        }
        auto next = c_.first_allowed(i_, big_ + 1);
        if (!next) return false;
        big_ = std::move(*next);
        value_ = convert(big_);
        return true;
    }

    [[nodiscard]] const T& value() const { return value_; }

private:
    static T convert(const BigInt& v) {
        if constexpr (std::is_same_v<T, BigInt>) {
            return v;
        } else {
            return *to_u64(v);
        }
    }

    const DigitConstraint& c_;
    std::uint64_t i_;
    std::uint64_t floor_;
    bool materialized_ = false;
    std::vector<T> list_;
    std::size_t pos_ = 0;
    BigInt big_;
    T value_{};
};

// Odometer over allowed digit tuples, least significant fastest, so values come
// out in ascending order.
template <class T>
EnumerationResult odometer(const DigitConstraint& c, std::uint64_t k, std::uint64_t budget,
                           const std::function<void(const T&)>& emit) {
    const auto& seq = c.sequence();
    std::vector<DigitCursor<T>> cursors;
    std::vector<T> bases;
    cursors.reserve(k + 1);
    T value = 0;
    for (std::uint64_t i = 0; i <= k; ++i) {
        cursors.emplace_back(c, i, i == k);
        if (!cursors.back().reset()) return {};
        if constexpr (std::is_same_v<T, BigInt>) {
            bases.push_back(seq.base_value(i));
        } else {
            bases.push_back(*seq.base_value_u64(i));
        }
        value += cursors.back().value() * bases.back();
    }

    EnumerationResult result;
    for (;;) {
        if (result.produced == budget) {
            result.truncated = true;
            return result;
        }
        emit(value);
        ++result.produced;

        std::uint64_t i = 0;
        for (; i <= k; ++i) {
            auto& cur = cursors[i];
            const T before = cur.value();
            if (cur.advance()) {
                value += (cur.value() - before) * bases[i];
                break;
            }
            cur.reset();
            value -= (before - cur.value()) * bases[i];
        }
        if (i > k) return result;
    }
}

}  // namespace

// ---------------------------------------------------------------- DigitSet

DigitSet DigitSet::listed(std::vector<std::uint64_t> digits) {
    std::sort(digits.begin(), digits.end());
    digits.erase(std::unique(digits.begin(), digits.end()), digits.end());
    DigitSet s;
    s.digits_ = std::move(digits);
    return s;
}

DigitSet DigitSet::nonzero() {
    DigitSet s;
    s.nonzero_ = true;
    return s;
}

bool DigitSet::contains(std::uint64_t x) const {
    if (nonzero_) return x != 0;
    return std::binary_search(digits_.begin(), digits_.end(), x);
}

bool DigitSet::contains(const BigInt& x) const {
    if (nonzero_) return sgn(x) != 0;
    auto small = to_u64(x);
    return small && contains(*small);
}

BigInt DigitSet::size(const BigInt& d) const {
    if (nonzero_) return d - 1;
    return to_big(digits_.size());
}

BigInt DigitSet::count_in(const BigInt& lo, const BigInt& hi, const BigInt& d) const {
    if (hi <= lo) return 0;
    if (nonzero_) {
        BigInt a = lo < 1 ? BigInt(1) : lo;
        BigInt b = hi > d ? d : hi;
        return b > a ? BigInt(b - a) : BigInt(0);
    }
    std::uint64_t n = 0;
    for (auto u : digits_) {
        const BigInt ub = to_big(u);
        if (ub >= lo && ub < hi) ++n;
    }
    return to_big(n);
}

bool DigitSet::is_full_nonzero(const BigInt& d) const {
    if (nonzero_) return true;
    if (digits_.empty() || digits_.front() != 1) return false;
    // sorted and unique: {1..m} iff last == size
    return digits_.back() == digits_.size() && to_big(digits_.back()) == d - 1;
}

std::string DigitSet::describe() const {
    if (nonzero_) return "[1,d-1]";
    std::string s = "{";
    for (std::size_t i = 0; i < digits_.size(); ++i) s += (i ? "," : "") + std::to_string(digits_[i]);
    return s + "}";
}

// ---------------------------------------------------------- DigitConstraint

DigitConstraint make_constraint(const QuotientSequence& seq, const IndexSet& index_set, ForbiddenSpec forbidden) {
    if (index_set.is_finite() && !index_set.max_member())
        throw Error(ErrorCode::InvalidIndexSet, "index set is empty");

    for (const auto& [i, u] : forbidden.overrides) {
        if (!index_set.contains(i))
            throw Error(ErrorCode::IndexNotInSet, "override at " + position(i) + " lies outside the index set");
        validate_at(u, i, seq.quotient(i));
    }

    if (forbidden.default_set) {
        validate_default(seq, index_set, forbidden);
    } else if (auto missing = next_default_index(index_set, forbidden, 0)) {
        throw Error(ErrorCode::EmptyForbiddenSet, "no forbidden set for " + position(*missing) + " and no default");
    }
    return DigitConstraint(seq, index_set, std::move(forbidden));
}

const DigitSet* DigitConstraint::forbidden(std::uint64_t i) const {
    if (!index_set_.contains(i)) return nullptr;
    if (auto it = forbidden_.overrides.find(i); it != forbidden_.overrides.end()) return &it->second;
    return &*forbidden_.default_set;
}

BigInt DigitConstraint::allowed(std::uint64_t i) const {
    BigInt d = seq_.quotient(i);
    if (const DigitSet* u = forbidden(i)) return d - u->size(d);
    return d;
}

BigInt DigitConstraint::allowed_leading(std::uint64_t k) const {
    BigInt d = seq_.quotient(k);
    BigInt out = d - 1;
    if (const DigitSet* u = forbidden(k)) out -= u->count_in(1, d, d);
    return out;
}

bool DigitConstraint::digit_allowed(std::uint64_t i, const BigInt& c) const {
    const DigitSet* u = forbidden(i);
    return u == nullptr || !u->contains(c);
}

bool DigitConstraint::digit_allowed(std::uint64_t i, std::uint64_t c) const {
    const DigitSet* u = forbidden(i);
    return u == nullptr || !u->contains(c);
}

std::optional<BigInt> DigitConstraint::first_allowed(std::uint64_t i, const BigInt& from) const {
    const BigInt d = seq_.quotient(i);
    if (from >= d) return std::nullopt;
    const DigitSet* u = forbidden(i);
    if (u == nullptr) return from;
    if (u->is_nonzero_range()) return sgn(from) == 0 ? std::optional<BigInt>(BigInt(0)) : std::nullopt;

    const auto& ds = u->digits();
    auto small = to_u64(from);
    if (!small) return from;  // beyond every listed digit
    auto it = std::lower_bound(ds.begin(), ds.end(), *small);
    BigInt out = from;
    for (std::uint64_t v = *small; it != ds.end() && *it == v; ++it, ++v) out += 1;
    if (out >= d) return std::nullopt;
    return out;
}

std::string DigitConstraint::describe() const {
    std::string s = "sequence=" + seq_.describe() + " I=" + index_set_.describe();
    if (forbidden_.default_set) s += " U=" + forbidden_.default_set->describe();
    for (const auto& [i, u] : forbidden_.overrides) s += " U_" + std::to_string(i) + "=" + u.describe();
    return s;
}

// ---------------------------------------------------------------- fixed bits

namespace {

DigitSet bit_complement(int v, std::uint64_t i) {
    if (v != 0 && v != 1)
        throw Error(ErrorCode::BitOutOfRange, "bit at " + position(i) + " must be 0 or 1");
    return DigitSet::listed({static_cast<std::uint64_t>(1 - v)});
}

}  // namespace

DigitConstraint fixed_bits(const std::map<std::uint64_t, int>& bits) {
    if (bits.empty()) throw Error(ErrorCode::BitOutOfRange, "fixed_bits needs at least one constrained position");
    ForbiddenSpec spec;
    std::vector<std::uint64_t> keys;
    for (const auto& [i, v] : bits) {
        spec.overrides.emplace(i, bit_complement(v, i));
        keys.push_back(i);
    }
    return make_constraint(make_sequence(ConstantRule{2}), IndexSet::explicit_set(std::move(keys)), std::move(spec));
}

DigitConstraint fixed_bits(const IndexSet& index_set, int default_bit, const std::map<std::uint64_t, int>& overrides) {
    ForbiddenSpec spec;
    spec.default_set = bit_complement(default_bit, 0);
    for (const auto& [i, v] : overrides) spec.overrides.emplace(i, bit_complement(v, i));
    return make_constraint(make_sequence(ConstantRule{2}), index_set, std::move(spec));
}

// ------------------------------------------------------------- membership

bool is_member(const DigitConstraint& c, const BigInt& n) {
    if (sgn(n) <= 0) throw Error(ErrorCode::NonPositiveInput, "membership requires n >= 1");
    if (auto small = to_u64(n)) return is_member_u64(c, *small);
    const Numeral numeral = to_digits(c.sequence(), n);
    for (std::uint64_t i = 0; i < numeral.digits.size(); ++i)
        if (!c.digit_allowed(i, numeral.digits[i])) return false;
    return true;
}

bool is_member_u64(const DigitConstraint& c, std::uint64_t n) {
    if (n == 0) throw Error(ErrorCode::NonPositiveInput, "membership requires n >= 1");
    const auto& seq = c.sequence();
    for (std::uint64_t i = 0; n > 0; ++i) {
        const std::uint64_t d = seq.quotient_u64(i);
        const std::uint64_t digit = d == std::numeric_limits<std::uint64_t>::max() ? n : n % d;
        if (!c.digit_allowed(i, digit)) return false;
        n = d == std::numeric_limits<std::uint64_t>::max() ? 0 : n / d;
    }
    return true;
}

// ---------------------------------------------------------------- counting

BlockCount block_count_exact(const DigitConstraint& c, std::uint64_t k) {
    BlockCount out;
    out.k = k;
    BigInt lower = 1;
    for (std::uint64_t i = 0; i < k; ++i) lower *= c.allowed(i);
    out.product_bound = lower * c.allowed(k);
    out.exact = lower * c.allowed_leading(k);
    const DigitSet* top = c.forbidden(k);
    out.empty = top != nullptr && top->is_full_nonzero(c.sequence().quotient(k));
    return out;
}

BigInt count_upto(const DigitConstraint& c, const BigInt& n) {
    if (sgn(n) <= 0) return 0;
    const Numeral numeral = to_digits(c.sequence(), n);
    const std::uint64_t top = numeral.top_index();

    // prefix[j] = product of allowed(i) over i < j
    std::vector<BigInt> prefix(top + 1);
    prefix[0] = 1;
    for (std::uint64_t j = 1; j <= top; ++j) prefix[j] = prefix[j - 1] * c.allowed(j - 1);

    BigInt total = 0;
    for (std::uint64_t k = 0; k < top; ++k) total += prefix[k] * c.allowed_leading(k);

    // top block, most significant digit first, prefix equal to n so far
    for (std::uint64_t j = top + 1; j-- > 0;) {
        const BigInt lo = j == top ? 1 : 0;
        const BigInt& cj = numeral.digits[j];
        if (cj > lo) {
            BigInt choices = cj - lo;
            if (const DigitSet* u = c.forbidden(j)) choices -= u->count_in(lo, cj, c.sequence().quotient(j));
            total += choices * prefix[j];
        }
        if (!c.digit_allowed(j, cj)) break;
    }
    if (is_member(c, n)) total += 1;
    return total;
}

// ------------------------------------------------------------- enumeration

EnumerationResult enumerate_block(const DigitConstraint& c, std::uint64_t k, std::uint64_t budget,
                                  const std::function<void(const BigInt&)>& emit) {
    if (c.sequence().base_value_u64(k + 1)) {
        BigInt scratch;
        return odometer<std::uint64_t>(c, k, budget, [&](const std::uint64_t& v) {
            scratch = to_big(v);
            emit(scratch);
        });
    }
    return odometer<BigInt>(c, k, budget, emit);
}

BlockMembers block_members(const DigitConstraint& c, std::uint64_t k, std::uint64_t budget) {
    BlockMembers out;
    out.truncated = enumerate_block(c, k, budget, [&](const BigInt& v) { out.members.push_back(v); }).truncated;
    return out;
}

// -------------------------------------------------------------- finiteness

std::string_view to_string(Finiteness f) {
    switch (f) {
        case Finiteness::Finite: return "finite";
        case Finiteness::Infinite: return "infinite";
        case Finiteness::Unknown: return "unknown";
    }
    return "unknown";
}

Finiteness is_finite_set(const DigitConstraint& c) {
    // A is finite iff A_k is empty for all large k, i.e. iff I is cofinite and
    // U_k = [1, d_k - 1] eventually. Overrides are finite, so the default decides.
    const IndexSet& set = c.index_set();
    if (!set.is_cofinite()) return Finiteness::Infinite;
    const auto& spec = c.forbidden_spec();
    if (!spec.default_set) return Finiteness::Unknown;
    const DigitSet& u = *spec.default_set;
    if (u.is_nonzero_range()) return Finiteness::Finite;

    const auto& seq = c.sequence();
    return std::visit(overloaded{
                          [&](const ConstantRule& r) {
                              return u.is_full_nonzero(to_big(r.d)) ? Finiteness::Finite : Finiteness::Infinite;
                          },
                          [&](const ExplicitRule& r) {
                              if (r.extension == Extension::RepeatLast)
                                  return u.is_full_nonzero(to_big(r.values.back())) ? Finiteness::Finite
                                                                                    : Finiteness::Infinite;
                              const bool all_full = std::all_of(r.values.begin(), r.values.end(), [&](std::uint64_t v) {
                                  return u.is_full_nonzero(to_big(v));
                              });
                              return all_full ? Finiteness::Finite : Finiteness::Infinite;
                          },
                          // growing quotients outrun a fixed listed set
                          [](const PowerRule&) { return Finiteness::Infinite; },
                          [](const FactorialRule&) { return Finiteness::Infinite; },
                      },
                      seq.rule());
}

}  // namespace kempner
