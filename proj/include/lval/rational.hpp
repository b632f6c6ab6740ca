#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "lval/errors.hpp"

namespace lval {

using Integer = boost::multiprecision::cpp_int;

/**
 * Exact rational number, always stored in lowest terms with a positive
 * denominator.
 *
 * Thin value wrapper over Boost.Multiprecision's cpp_rational. The wrapper
 * pins the textual form ("p/q", with "/q" omitted when q = 1) and keeps the
 * rest of the library independent of the backend.
 */
class Rational {
 public:
  using backend_type = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(int n) : value_(n) {}        // NOLINT(google-explicit-constructor)
  Rational(long n) : value_(n) {}       // NOLINT(google-explicit-constructor)
  Rational(long long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(unsigned long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(unsigned long long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(unsigned n) : value_(n) {}            // NOLINT(google-explicit-constructor)
  Rational(const Integer& n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    value_ = den < 0 ? backend_type(Integer(-num), Integer(-den)) : backend_type(num, den);
  }
  explicit Rational(backend_type v) : value_(std::move(v)) {}

  /// Parses "p/q", an integer, or a finite decimal such as "-0.125".
  static Rational parse(std::string_view text);

  /// 2^exponent for any integer exponent.
  static Rational pow2(long exponent) {
    Integer p = Integer(1) << static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
    return exponent < 0 ? Rational(Integer(1), p) : Rational(p);
  }

  Integer numerator() const { return boost::multiprecision::numerator(value_); }
  Integer denominator() const { return boost::multiprecision::denominator(value_); }
  const backend_type& backend() const { return value_; }

  bool is_zero() const { return value_ == 0; }
  int sign() const { return value_.sign(); }

  std::string str() const {
    Integer d = denominator();
    if (d == 1) return numerator().str();
    return numerator().str() + "/" + d.str();
  }

  /// Decimal approximation, only for labelled "approx" output fields.
  double to_double() const { return value_.convert_to<double>(); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(backend_type(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = a.value_.compare(b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  backend_type value_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Largest integer not above r.
inline Integer floor(const Rational& r) {
  Integer q = r.numerator() / r.denominator();  // truncates toward zero
  if (r.sign() < 0 && q * r.denominator() != r.numerator()) q -= 1;
  return q;
}

/// Smallest integer not below r.
inline Integer ceil(const Rational& r) { return -floor(-r); }

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw parse_error("not a rational: \"" + std::string(text) + "\"");
  };
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) return fail();

  auto parse_int = [&](std::string_view s) -> Integer {
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
      neg = s.front() == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) fail();
    Integer v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') fail();
      v = v * 10 + (c - '0');
    }
    return neg ? Integer(-v) : v;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_int(text.substr(0, slash));
    Integer den = parse_int(text.substr(slash + 1));
    if (den == 0) return fail();
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool neg = !whole.empty() && whole.front() == '-';
    if (frac.empty()) return fail();
    std::string_view digits = whole;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    Integer w = digits.empty() ? Integer(0) : parse_int(digits);
    Integer f = parse_int(frac);
    if (f < 0) return fail();
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational r = Rational(w) + Rational(f, scale);
    return neg ? -r : r;
  }
  return Rational(parse_int(text));
}

}  // namespace lval
