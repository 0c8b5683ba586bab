#include "kempner/index_set.hpp"

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

// floor(log_b k) + 1 for k >= 1: number of powers b^j <= k.
std::uint64_t powers_up_to(std::uint64_t base, std::uint64_t k) {
    if (k == 0) return 0;
    std::uint64_t c = 1;
    for (std::uint64_t p = 1; p <= k / base;) {
        p *= base;
        ++c;
    }
    return c;
}

Rational rpow(const Rational& r, std::uint64_t e) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), r.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), r.get_den_mpz_t(), e);
    out.canonicalize();
    return out;
}

// Members of the rule in [from, to), exact sum of r^i.
Rational window_sum(const IndexSet& set, std::uint64_t from, std::uint64_t to, const Rational& r) {
    Rational sum = 0;
    for (auto i = set.next_member(from); i && *i < to; i = set.next_member(*i + 1)) sum += rpow(r, *i);
    return sum;
}

constexpr std::uint64_t kTailWindow = 256;

}  // namespace

IndexSet IndexSet::all() { return IndexSet(All{}); }

IndexSet IndexSet::explicit_set(std::vector<std::uint64_t> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    return IndexSet(Explicit{std::move(indices)});
}

IndexSet IndexSet::arithmetic(std::uint64_t first, std::uint64_t step) {
    if (step == 0) throw Error(ErrorCode::InvalidIndexSet, "arithmetic progression step must be >= 1");
    return IndexSet(Arithmetic{first, step});
}

IndexSet IndexSet::powers_of(std::uint64_t base) {
    if (base < 2) throw Error(ErrorCode::InvalidIndexSet, "powers-of base must be >= 2");
    return IndexSet(PowersOf{base});
}

IndexSet IndexSet::complement(const IndexSet& inner) {
    if (const auto* c = std::get_if<Complement>(&inner.rule_)) return *c->inner;
    return IndexSet(Complement{std::make_shared<const IndexSet>(inner)});
}

bool IndexSet::contains(std::uint64_t i) const {
    return std::visit(overloaded{
                          [](const All&) { return true; },
                          [i](const Explicit& e) { return std::binary_search(e.indices.begin(), e.indices.end(), i); },
                          [i](const Arithmetic& a) { return i >= a.first && (i - a.first) % a.step == 0; },
                          [i](const PowersOf& p) {
                              if (i == 0) return false;
                              std::uint64_t v = i;
                              while (v % p.base == 0) v /= p.base;
                              return v == 1;
                          },
                          [i](const Complement& c) { return !c.inner->contains(i); },
                      },
                      rule_);
}

std::uint64_t IndexSet::count(std::uint64_t k) const {
    return std::visit(overloaded{
                          [k](const All&) { return k + 1; },
                          [k](const Explicit& e) {
                              return static_cast<std::uint64_t>(
                                  std::upper_bound(e.indices.begin(), e.indices.end(), k) - e.indices.begin());
                          },
                          [k](const Arithmetic& a) { return k < a.first ? 0 : (k - a.first) / a.step + 1; },
                          [k](const PowersOf& p) { return powers_up_to(p.base, k); },
                          [k](const Complement& c) { return k + 1 - c.inner->count(k); },
                      },
                      rule_);
}

std::optional<std::uint64_t> IndexSet::next_member(std::uint64_t from) const {
    using R = std::optional<std::uint64_t>;
    return std::visit(overloaded{
                          [from](const All&) -> R { return from; },
                          [from](const Explicit& e) -> R {
                              auto it = std::lower_bound(e.indices.begin(), e.indices.end(), from);
                              if (it == e.indices.end()) return std::nullopt;
                              return *it;
                          },
                          [from](const Arithmetic& a) -> R {
                              if (from <= a.first) return a.first;
                              const std::uint64_t steps = (from - a.first + a.step - 1) / a.step;
                              return a.first + steps * a.step;
                          },
                          [from](const PowersOf& p) -> R {
                              std::uint64_t v = 1;
                              while (v < from) {
                                  if (v > std::numeric_limits<std::uint64_t>::max() / p.base) return std::nullopt;
                                  v *= p.base;
                              }
                              return v;
                          },
                          [this, from](const Complement&) -> R {
                              for (std::uint64_t i = from;; ++i) {
                                  if (contains(i)) return i;
                                  if (i == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
                                  if (is_finite() && (!max_member() || i > *max_member())) return std::nullopt;
                              }
                          },
                      },
                      rule_);
}

bool IndexSet::is_finite() const {
    return std::visit(overloaded{
                          [](const All&) { return false; },
                          [](const Explicit&) { return true; },
                          [](const Arithmetic&) { return false; },
                          [](const PowersOf&) { return false; },
                          [](const Complement& c) { return c.inner->is_cofinite(); },
                      },
                      rule_);
}

bool IndexSet::is_cofinite() const {
    return std::visit(overloaded{
                          [](const All&) { return true; },
                          [](const Explicit&) { return false; },
                          [](const Arithmetic& a) { return a.step == 1; },
                          [](const PowersOf&) { return false; },
                          [](const Complement& c) { return c.inner->is_finite(); },
                      },
                      rule_);
}

std::optional<std::uint64_t> IndexSet::max_member() const {
    using R = std::optional<std::uint64_t>;
    return std::visit(overloaded{
                          [](const Explicit& e) -> R {
                              if (e.indices.empty()) return std::nullopt;
                              return e.indices.back();
                          },
                          [](const Complement& c) -> R {
                              // finite complement: inner is All or a step-1 progression
                              if (!c.inner->is_cofinite()) return std::nullopt;
                              if (const auto* a = std::get_if<Arithmetic>(&c.inner->rule_))
                                  return a->first == 0 ? R{} : R{a->first - 1};
                              return std::nullopt;
                          },
                          [](const auto&) -> R { return std::nullopt; },
                      },
                      rule_);
}

IndexGrowth IndexSet::growth() const {
    IndexGrowth g;
    std::visit(overloaded{
                   [&](const All&) {
                       g.kind = IndexGrowth::Kind::Linear;
                       g.density = 1;
                   },
                   [&](const Explicit& e) {
                       g.kind = IndexGrowth::Kind::Bounded;
                       g.size = e.indices.size();
                   },
                   [&](const Arithmetic& a) {
                       g.kind = IndexGrowth::Kind::Linear;
                       g.density = Rational(1, a.step);
                       g.offset = Rational(a.first, a.step);
                       g.offset.canonicalize();
                       g.density.canonicalize();
                   },
                   [&](const PowersOf& p) {
                       g.kind = IndexGrowth::Kind::Logarithmic;
                       g.log_base = p.base;
                   },
                   [&](const Complement& c) {
                       std::visit(overloaded{
                                      [&](const All&) {
                                          g.kind = IndexGrowth::Kind::Bounded;
                                          g.size = 0;
                                      },
                                      [&](const Explicit& e) {
                                          g.kind = IndexGrowth::Kind::Linear;
                                          g.density = 1;
                                          g.offset = e.indices.empty() ? 0 : static_cast<long>(e.indices.size()) - 1;
                                      },
                                      [&](const Arithmetic& a) {
                                          if (a.step == 1) {
                                              g.kind = IndexGrowth::Kind::Bounded;
                                              g.size = a.first;
                                          } else {
                                              g.kind = IndexGrowth::Kind::Linear;
                                              g.density = Rational(a.step - 1, a.step);
                                              g.density.canonicalize();
                                          }
                                      },
                                      [&](const PowersOf& p) {
                                          g.kind = IndexGrowth::Kind::Linear;
                                          g.density = 1;
                                          g.log_slack = 1;
                                          g.slack_base = p.base;
                                      },
                                      [&](const Complement&) {},
                                  },
                                  c.inner->rule_);
                   },
               },
               rule_);
    return g;
}

TailSum IndexSet::geometric_tail(std::uint64_t from, const Rational& r) const {
    const Rational one_minus = 1 - r;
    return std::visit(overloaded{
                          [&](const All&) { return TailSum{rpow(r, from) / one_minus, true}; },
                          [&](const Explicit& e) {
                              Rational sum = 0;
                              for (auto i : e.indices)
                                  if (i >= from) sum += rpow(r, i);
                              return TailSum{sum, true};
                          },
                          [&](const Arithmetic& a) {
                              const std::uint64_t start = *next_member(from);
                              return TailSum{rpow(r, start) / (1 - rpow(r, a.step)), true};
                          },
                          [&](const PowersOf&) {
                              const std::uint64_t cut = from + kTailWindow;
                              Rational sum = window_sum(*this, from, cut, r) + rpow(r, cut) / one_minus;
                              return TailSum{sum, false};
                          },
                          [&](const Complement& c) {
                              const TailSum inner = c.inner->geometric_tail(from, r);
                              const Rational whole = rpow(r, from) / one_minus;
                              if (inner.exact) return TailSum{whole - inner.value, true};
                              const std::uint64_t cut = from + kTailWindow;
                              return TailSum{whole - window_sum(*c.inner, from, cut, r), false};
                          },
                      },
                      rule_);
}

std::string IndexSet::describe() const {
    return std::visit(overloaded{
                          [](const All&) { return std::string("all"); },
                          [](const Explicit& e) {
                              std::string s = "{";
                              for (std::size_t i = 0; i < e.indices.size(); ++i)
                                  s += (i ? "," : "") + std::to_string(e.indices[i]);
                              return s + "}";
                          },
                          [](const Arithmetic& a) {
                              return "arithmetic(" + std::to_string(a.first) + "+" + std::to_string(a.step) + "j)";
                          },
                          [](const PowersOf& p) { return "powers-of(" + std::to_string(p.base) + ")"; },
                          [](const Complement& c) { return "complement(" + c.inner->describe() + ")"; },
                      },
                      rule_);
}

}  // namespace kempner
