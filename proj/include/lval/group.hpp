#pragma once

// Ordered Abelian groups used as valuation codomains: the rationals, the
// lexicographic plane, the positive rationals under multiplication ordered by
// divisibility, finite products, and order-reversed copies of any of these.

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lval/check_report.hpp"
#include "lval/errors.hpp"
#include "lval/random.hpp"
#include "lval/rational.hpp"

namespace lval {

/// R^2 with componentwise addition and the lexicographic order.
struct LexPair {
  Rational first;
  Rational second;

  friend bool operator==(const LexPair&, const LexPair&) = default;

  /// x1 < y1, or x1 = y1 and x2 <= y2.
  friend bool lex_leq(const LexPair& x, const LexPair& y) {
    return x.first < y.first || (x.first == y.first && x.second <= y.second);
  }

  std::string str() const { return "(" + first.str() + ", " + second.str() + ")"; }
  static LexPair parse(std::string_view text);
};

/// Factorizes n >= 1 by trial division. Returns prime -> exponent.
inline std::map<std::uint64_t, std::int64_t> factorize(std::uint64_t n) {
  if (n == 0) throw std::domain_error("factorize: 0 has no factorization");
  std::map<std::uint64_t, std::int64_t> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

/**
 * A strictly positive rational stored by its prime exponents.
 *
 * The group operation is multiplication (exponent addition) and the order is
 * divisibility: q <= r iff r = q * n for a positive integer n, i.e. iff every
 * exponent of r/q is non-negative. Meet and join are the componentwise
 * min/max of exponents (gcd and lcm on integers).
 */
class DivPos {
 public:
  using Exponents = std::map<std::uint64_t, std::int64_t>;

  DivPos() = default;
  explicit DivPos(Exponents e) : exps_(std::move(e)) { prune(); }

  static DivPos from_integer(std::uint64_t n) { return DivPos(factorize(n)); }
  static DivPos parse(std::string_view text);

  const Exponents& exponents() const { return exps_; }
  std::int64_t exponent(std::uint64_t p) const {
    auto it = exps_.find(p);
    return it == exps_.end() ? 0 : it->second;
  }

  /// Group operation: multiplication.
  friend DivPos operator*(const DivPos& a, const DivPos& b) {
    return zip(a, b, [](std::int64_t x, std::int64_t y) { return x + y; });
  }
  DivPos inverse() const {
    Exponents e;
    for (auto [p, k] : exps_) e[p] = -k;
    return DivPos(std::move(e));
  }
  friend DivPos gcd(const DivPos& a, const DivPos& b) {
    return zip(a, b, [](std::int64_t x, std::int64_t y) { return std::min(x, y); });
  }
  friend DivPos lcm(const DivPos& a, const DivPos& b) {
    return zip(a, b, [](std::int64_t x, std::int64_t y) { return std::max(x, y); });
  }
  friend bool divides(const DivPos& a, const DivPos& b) {
    for (const auto& [p, k] : (b * a.inverse()).exps_)
      if (k < 0) return false;
    return true;
  }

  Rational value() const {
    Integer num = 1, den = 1;
    for (auto [p, k] : exps_) {
      Integer pp = boost::multiprecision::pow(Integer(p), static_cast<unsigned>(k < 0 ? -k : k));
      (k < 0 ? den : num) *= pp;
    }
    return Rational(num, den);
  }

  /// "2^a·3^b·…" with primes ascending; the identity prints as "1".
  std::string str() const {
    if (exps_.empty()) return "1";
    std::string out;
    for (auto [p, k] : exps_) {
      if (!out.empty()) out += "·";
      out += std::to_string(p) + "^" + std::to_string(k);
    }
    return out;
  }

  friend bool operator==(const DivPos&, const DivPos&) = default;

 private:
  template <class F>
  static DivPos zip(const DivPos& a, const DivPos& b, F f) {
    Exponents e;
    for (auto [p, k] : a.exps_) e[p] = f(k, b.exponent(p));
    for (auto [p, k] : b.exps_)
      if (!a.exps_.count(p)) e[p] = f(0, k);
    return DivPos(std::move(e));
  }
  void prune() {
    for (auto it = exps_.begin(); it != exps_.end();)
      it = it->second == 0 ? exps_.erase(it) : std::next(it);
  }

  Exponents exps_;
};

enum class GroupKind { rational, lex, divpos, product, opposite };

struct GroupElem;

/// Element of a finite product group, compared and combined componentwise.
struct ProductElem {
  std::vector<GroupElem> parts;
};

/// Element of E^op: same group structure as E, reversed order.
struct OppositeElem {
  std::shared_ptr<const GroupElem> inner;
};

/// Tagged element of one of the built-in ordered Abelian groups.
struct GroupElem {
  std::variant<Rational, LexPair, DivPos, ProductElem, OppositeElem> value;

  GroupElem() : value(Rational(0)) {}
  GroupElem(Rational r) : value(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GroupElem(int r) : value(Rational(r)) {}         // NOLINT(google-explicit-constructor)
  GroupElem(LexPair p) : value(std::move(p)) {}    // NOLINT(google-explicit-constructor)
  GroupElem(DivPos d) : value(std::move(d)) {}     // NOLINT(google-explicit-constructor)
  GroupElem(ProductElem p) : value(std::move(p)) {}  // NOLINT(google-explicit-constructor)
  GroupElem(OppositeElem o) : value(std::move(o)) {}  // NOLINT(google-explicit-constructor)

  static GroupElem product(std::vector<GroupElem> parts) { return ProductElem{std::move(parts)}; }
  static GroupElem opposite(GroupElem inner) {
    return OppositeElem{std::make_shared<const GroupElem>(std::move(inner))};
  }

  GroupKind kind() const { return static_cast<GroupKind>(value.index()); }

  const Rational& as_rational() const {
    if (auto* r = std::get_if<Rational>(&value)) return *r;
    throw shape_error("expected a rational group element, got " + str());
  }
  const DivPos& as_divpos() const {
    if (auto* d = std::get_if<DivPos>(&value)) return *d;
    throw shape_error("expected a DivPos group element, got " + str());
  }
  const LexPair& as_lex() const {
    if (auto* d = std::get_if<LexPair>(&value)) return *d;
    throw shape_error("expected a LexPair group element, got " + str());
  }
  const std::vector<GroupElem>& parts() const {
    if (auto* d = std::get_if<ProductElem>(&value)) return d->parts;
    throw shape_error("expected a product group element, got " + str());
  }
  const GroupElem& unwrap_opposite() const {
    if (auto* d = std::get_if<OppositeElem>(&value)) return *d->inner;
    throw shape_error("expected an opposite-group element, got " + str());
  }

  std::string str() const;

  friend bool operator==(const GroupElem& a, const GroupElem& b);
};

inline std::string GroupElem::str() const {
  switch (kind()) {
    case GroupKind::rational: return std::get<Rational>(value).str();
    case GroupKind::lex: return std::get<LexPair>(value).str();
    case GroupKind::divpos: return std::get<DivPos>(value).str();
    case GroupKind::product: {
      std::string out = "[";
      const auto& ps = std::get<ProductElem>(value).parts;
      for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? ", " : "") + ps[i].str();
      return out + "]";
    }
    case GroupKind::opposite: return "op(" + std::get<OppositeElem>(value).inner->str() + ")";
  }
  return {};
}

inline bool operator==(const GroupElem& a, const GroupElem& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case GroupKind::rational: return std::get<Rational>(a.value) == std::get<Rational>(b.value);
    case GroupKind::lex: return std::get<LexPair>(a.value) == std::get<LexPair>(b.value);
    case GroupKind::divpos: return std::get<DivPos>(a.value) == std::get<DivPos>(b.value);
    case GroupKind::product: {
      const auto& x = std::get<ProductElem>(a.value).parts;
      const auto& y = std::get<ProductElem>(b.value).parts;
      return x.size() == y.size() && std::equal(x.begin(), x.end(), y.begin());
    }
    case GroupKind::opposite: return a.unwrap_opposite() == b.unwrap_opposite();
  }
  return false;
}

inline std::ostream& operator<<(std::ostream& os, const GroupElem& g) { return os << g.str(); }

namespace detail {

inline void require_same_shape(const GroupElem& x, const GroupElem& y) {
  if (x.kind() != y.kind())
    throw shape_error("group elements of different kinds: " + x.str() + " vs " + y.str());
  if (x.kind() == GroupKind::product && x.parts().size() != y.parts().size())
    throw shape_error("product elements of different arity: " + x.str() + " vs " + y.str());
}

template <class F>
GroupElem map_parts(const GroupElem& x, const GroupElem& y, F f) {
  std::vector<GroupElem> out;
  const auto& xs = x.parts();
  const auto& ys = y.parts();
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out.push_back(f(xs[i], ys[i]));
  return GroupElem::product(std::move(out));
}

}  // namespace detail

GroupElem add(const GroupElem& x, const GroupElem& y);
GroupElem neg(const GroupElem& x);
bool leq(const GroupElem& x, const GroupElem& y);
GroupElem meet(const GroupElem& x, const GroupElem& y);
GroupElem join(const GroupElem& x, const GroupElem& y);

inline GroupElem add(const GroupElem& x, const GroupElem& y) {
  detail::require_same_shape(x, y);
  switch (x.kind()) {
    case GroupKind::rational: return x.as_rational() + y.as_rational();
    case GroupKind::lex:
      return LexPair{x.as_lex().first + y.as_lex().first, x.as_lex().second + y.as_lex().second};
    case GroupKind::divpos: return x.as_divpos() * y.as_divpos();
    case GroupKind::product:
      return detail::map_parts(x, y, [](const GroupElem& a, const GroupElem& b) { return add(a, b); });
    case GroupKind::opposite:
      return GroupElem::opposite(add(x.unwrap_opposite(), y.unwrap_opposite()));
  }
  throw shape_error("add: unknown group kind");
}

inline GroupElem neg(const GroupElem& x) {
  switch (x.kind()) {
    case GroupKind::rational: return -x.as_rational();
    case GroupKind::lex: return LexPair{-x.as_lex().first, -x.as_lex().second};
    case GroupKind::divpos: return x.as_divpos().inverse();
    case GroupKind::product: {
      std::vector<GroupElem> out;
      for (const auto& p : x.parts()) out.push_back(neg(p));
      return GroupElem::product(std::move(out));
    }
    case GroupKind::opposite: return GroupElem::opposite(neg(x.unwrap_opposite()));
  }
  throw shape_error("neg: unknown group kind");
}

inline GroupElem sub(const GroupElem& x, const GroupElem& y) { return add(x, neg(y)); }

/// The identity of the group x lives in.
inline GroupElem zero_like(const GroupElem& x) { return sub(x, x); }

inline bool is_zero(const GroupElem& x) { return x == zero_like(x); }

inline bool leq(const GroupElem& x, const GroupElem& y) {
  detail::require_same_shape(x, y);
  switch (x.kind()) {
    case GroupKind::rational: return x.as_rational() <= y.as_rational();
    case GroupKind::lex: return lex_leq(x.as_lex(), y.as_lex());
    case GroupKind::divpos: return divides(x.as_divpos(), y.as_divpos());
    case GroupKind::product: {
      const auto& xs = x.parts();
      const auto& ys = y.parts();
      for (std::size_t i = 0; i < xs.size(); ++i)
        if (!leq(xs[i], ys[i])) return false;
      return true;
    }
    case GroupKind::opposite: return leq(y.unwrap_opposite(), x.unwrap_opposite());
  }
  throw shape_error("leq: unknown group kind");
}

inline GroupElem meet(const GroupElem& x, const GroupElem& y) {
  detail::require_same_shape(x, y);
  switch (x.kind()) {
    case GroupKind::rational: return min(x.as_rational(), y.as_rational());
    case GroupKind::lex: return lex_leq(x.as_lex(), y.as_lex()) ? x : y;
    case GroupKind::divpos: return gcd(x.as_divpos(), y.as_divpos());
    case GroupKind::product:
      return detail::map_parts(x, y, [](const GroupElem& a, const GroupElem& b) { return meet(a, b); });
    case GroupKind::opposite:
      return GroupElem::opposite(join(x.unwrap_opposite(), y.unwrap_opposite()));
  }
  throw unsupported_operation("meet: group is not lattice ordered");
}

inline GroupElem join(const GroupElem& x, const GroupElem& y) {
  detail::require_same_shape(x, y);
  switch (x.kind()) {
    case GroupKind::rational: return max(x.as_rational(), y.as_rational());
    case GroupKind::lex: return lex_leq(x.as_lex(), y.as_lex()) ? y : x;
    case GroupKind::divpos: return lcm(x.as_divpos(), y.as_divpos());
    case GroupKind::product:
      return detail::map_parts(x, y, [](const GroupElem& a, const GroupElem& b) { return join(a, b); });
    case GroupKind::opposite:
      return GroupElem::opposite(meet(x.unwrap_opposite(), y.unwrap_opposite()));
  }
  throw unsupported_operation("join: group is not lattice ordered");
}

enum class GroupOp { add, neg, leq, meet, join };

using GroupOpResult = std::variant<GroupElem, bool>;

/// Single dispatch point over the group operations; `y` is required for every
/// kind except `neg`.
inline GroupOpResult group_op(GroupOp kind, const GroupElem& x, const std::optional<GroupElem>& y = {}) {
  if (kind == GroupOp::neg) return neg(x);
  if (!y) throw shape_error("group_op: binary operation needs a second operand");
  switch (kind) {
    case GroupOp::add: return add(x, *y);
    case GroupOp::leq: return leq(x, *y);
    case GroupOp::meet: return meet(x, *y);
    case GroupOp::join: return join(x, *y);
    case GroupOp::neg: break;
  }
  return neg(x);
}

inline LexPair LexPair::parse(std::string_view text) {
  auto open = text.find('(');
  auto comma = text.find(',');
  auto close = text.rfind(')');
  if (open == std::string_view::npos || comma == std::string_view::npos || close == std::string_view::npos ||
      !(open < comma && comma < close))
    throw parse_error("not a lexicographic pair: \"" + std::string(text) + "\"");
  return LexPair{Rational::parse(text.substr(open + 1, comma - open - 1)),
                 Rational::parse(text.substr(comma + 1, close - comma - 1))};
}

inline DivPos DivPos::parse(std::string_view text) {
  Exponents e;
  std::string s(text);
  if (s == "1") return DivPos();
  const std::string dot = "·";
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find(dot, pos);
    std::string factor = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    auto caret = factor.find('^');
    if (caret == std::string::npos) throw parse_error("DivPos factor without exponent: \"" + factor + "\"");
    try {
      std::uint64_t p = std::stoull(factor.substr(0, caret));
      std::int64_t k = std::stoll(factor.substr(caret + 1));
      if (factorize(p) != Exponents{{p, 1}}) throw parse_error("DivPos base is not prime: " + factor);
      e[p] += k;
    } catch (const std::logic_error&) {
      throw parse_error("malformed DivPos factor: \"" + factor + "\"");
    }
    if (next == std::string::npos) break;
    pos = next + dot.size();
  }
  return DivPos(std::move(e));
}

// ---------------------------------------------------------------------------
// Sampled axiom check.

namespace detail {

inline GroupElem sample_group_elem(const std::string& descriptor, Rng& rng) {
  if (descriptor == "rational") return random_rational(rng, 50, 12);
  if (descriptor == "lex") return LexPair{random_rational(rng, 6, 3), random_rational(rng, 50, 12)};
  if (descriptor == "divpos") {
    DivPos::Exponents e;
    for (std::uint64_t p : {2, 3, 5, 7, 11}) e[p] = uniform_int(rng, -3, 3);
    return DivPos(std::move(e));
  }
  constexpr std::string_view prefix = "product:";
  if (descriptor.rfind(prefix, 0) == 0) {
    std::vector<GroupElem> parts;
    std::string rest = descriptor.substr(prefix.size());
    std::size_t pos = 0;
    while (true) {
      auto comma = rest.find(',', pos);
      parts.push_back(sample_group_elem(rest.substr(pos, comma - pos), rng));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return GroupElem::product(std::move(parts));
  }
  throw std::invalid_argument("unknown group descriptor: \"" + descriptor + "\"");
}

}  // namespace detail

/**
 * Samples triples from a built-in group and checks the ordered-group laws
 * exactly: Abelian group axioms, partial order axioms, translation
 * invariance, order reversal under negation, and the 1-valuation identity
 * (x∧y)+(x∨y) = x+y. For "divpos" it also compares meet/join against an
 * integer gcd/lcm computed independently of the exponent representation.
 *
 * Descriptors: "rational", "lex", "divpos", "product:<d1>,<d2>,...".
 */
inline CheckReport check_group_axioms(const std::string& descriptor, std::size_t samples, std::uint64_t seed) {
  Rng probe(seed);
  detail::sample_group_elem(descriptor, probe);  // reject unknown descriptors up front

  Rng rng(seed);
  CheckReport report;
  for (std::size_t i = 0; i < samples; ++i) {
    GroupElem x = detail::sample_group_elem(descriptor, rng);
    GroupElem y = rng() % 4 == 0 ? x : detail::sample_group_elem(descriptor, rng);
    GroupElem w = detail::sample_group_elem(descriptor, rng);
    auto wit = [&] { return "x=" + x.str() + " y=" + y.str() + " w=" + w.str(); };
    GroupElem zero = zero_like(x);

    report.record("associativity", add(add(x, y), w) == add(x, add(y, w)), wit);
    report.record("commutativity", add(x, y) == add(y, x), wit);
    report.record("identity", add(x, zero) == x, wit);
    report.record("inverse", add(x, neg(x)) == zero, wit);
    report.record("order_reflexive", leq(x, x), wit);
    report.record("order_antisymmetric", !(leq(x, y) && leq(y, x)) || x == y, wit);
    report.record("order_transitive", !(leq(x, y) && leq(y, w)) || leq(x, w), wit);
    report.record("translation_invariance", leq(x, y) == leq(add(w, x), add(w, y)), wit);
    report.record("negation_reverses", leq(x, y) == leq(neg(y), neg(x)), wit);
    GroupElem m = meet(x, y), j = join(x, y);
    report.record("meet_join_bounds", leq(m, x) && leq(m, y) && leq(x, j) && leq(y, j), wit);
    report.record("one_valuation", add(m, j) == add(x, y), wit);
  }

  if (descriptor == "divpos") {
    for (std::size_t i = 0; i < samples; ++i) {
      auto a = static_cast<std::uint64_t>(uniform_int(rng, 1, 5000));
      auto b = static_cast<std::uint64_t>(uniform_int(rng, 1, 5000));
      DivPos da = DivPos::from_integer(a), db = DivPos::from_integer(b);
      std::uint64_t g = std::gcd(a, b), l = std::lcm(a, b);
      bool ok = gcd(da, db).value() == Rational(g) && lcm(da, db).value() == Rational(l) &&
                (gcd(da, db) * lcm(da, db)).value() == Rational(a * b);
      report.record("gcd_lcm_oracle", ok,
                    [&] { return "m=" + std::to_string(a) + " n=" + std::to_string(b); });
    }
  }
  return report;
}

}  // namespace lval
