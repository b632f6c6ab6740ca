#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "lval/errors.hpp"
#include "lval/interval_set.hpp"
#include "lval/rational.hpp"

namespace lval {

/**
 * Rational expressions in one variable n: numbers (integer or decimal), n,
 * + - * / ^ (integer exponents), parentheses, unary minus, and implicit
 * multiplication as in "2n" or "3(n+1)".
 */
class NExpr {
 public:
  static NExpr parse(std::string_view text) {
    NExpr e;
    e.src_ = std::string(text);
    e.check();
    return e;
  }

  Rational eval(const Rational& n) const {
    Parser p{src_, 0, n};
    Rational v = p.expr();
    p.skip();
    if (p.pos != p.s.size()) throw parse_error("unexpected \"" + p.s.substr(p.pos) + "\" in \"" + src_ + "\"");
    return v;
  }

  const std::string& str() const { return src_; }

 private:
  void check() const {
    try {
      (void)eval(Rational(7));
    } catch (const std::domain_error&) {
      // Division by zero at the probe value is not a syntax problem.
    }
  }

  struct Parser {
    const std::string& s;
    std::size_t pos;
    Rational n;

    void skip() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
      skip();
      if (pos < s.size() && s[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }
    bool starts_primary() {
      skip();
      return pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == 'n' || s[pos] == '(');
    }
    Rational expr() {
      Rational v = term();
      for (;;) {
        if (eat('+')) v += term();
        else if (eat('-')) v -= term();
        else return v;
      }
    }
    Rational term() {
      Rational v = unary();
      for (;;) {
        if (eat('*')) v *= unary();
        else if (eat('/')) v /= unary();
        else if (starts_primary()) v *= power();
        else return v;
      }
    }
    Rational unary() {
      if (eat('-')) return -unary();
      if (eat('+')) return unary();
      return power();
    }
    Rational power() {
      Rational base = primary();
      if (!eat('^')) return base;
      Rational e = unary();
      if (e.denominator() != 1) throw parse_error("only integer exponents are supported in \"" + s + "\"");
      long k = static_cast<long>(e.numerator());
      Rational out = 1;
      for (long i = 0; i < (k < 0 ? -k : k); ++i) out *= base;
      return k < 0 ? Rational(1) / out : out;
    }
    Rational primary() {
      skip();
      if (pos >= s.size()) throw parse_error("expression ends early: \"" + s + "\"");
      if (eat('(')) {
        Rational v = expr();
        if (!eat(')')) throw parse_error("missing ')' in \"" + s + "\"");
        return v;
      }
      if (s[pos] == 'n') {
        ++pos;
        return n;
      }
      std::size_t start = pos;
      while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) ++pos;
      if (start == pos) throw parse_error("unexpected '" + std::string(1, s[pos]) + "' in \"" + s + "\"");
      return Rational::parse(s.substr(start, pos - start));
    }
  };

  std::string src_;
};

/// "[0, 1 + 1/n]", "(a, b]", "{x}" pieces joined by "u" or "∪"; evaluated
/// at stage n to an interval set.
class IntervalTemplate {
 public:
  struct Piece {
    bool lo_closed;
    NExpr lo;
    NExpr hi;
    bool hi_closed;
  };

  static IntervalTemplate parse(const std::string& text) {
    IntervalTemplate t;
    t.src_ = text;
    std::string s = text;
    for (std::size_t at; (at = s.find("∪")) != std::string::npos;) s.replace(at, std::string("∪").size(), "u");
    std::size_t i = 0;
    auto skip = [&] {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto until = [&](const std::string& stops) {
      std::size_t depth = 0, start = i;
      for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        else if (c == ')' && depth > 0) --depth;
        else if (depth == 0 && stops.find(c) != std::string::npos) break;
      }
      if (i >= s.size()) throw parse_error("unterminated interval in template \"" + text + "\"");
      return s.substr(start, i - start);
    };
    for (;;) {
      skip();
      if (i >= s.size()) throw parse_error("empty interval template \"" + text + "\"");
      char open = s[i++];
      if (open == '{') {
        NExpr x = NExpr::parse(until("}"));
        ++i;
        t.pieces_.push_back({true, x, x, true});
      } else if (open == '[' || open == '(') {
        NExpr lo = NExpr::parse(until(","));
        ++i;
        NExpr hi = NExpr::parse(until("])"));
        bool hi_closed = s[i++] == ']';
        t.pieces_.push_back({open == '[', lo, hi, hi_closed});
      } else {
        throw parse_error("interval must start with '[', '(' or '{' in template \"" + text + "\"");
      }
      skip();
      if (i >= s.size()) break;
      if (s[i] != 'u' && s[i] != 'U') throw parse_error("expected 'u' between intervals in template \"" + text + "\"");
      ++i;
    }
    return t;
  }

  IntervalSet at(std::size_t n) const {
    std::vector<Interval> raw;
    Rational x(static_cast<long long>(n));
    for (const auto& p : pieces_) {
      Interval iv{p.lo.eval(x), p.lo_closed, p.hi.eval(x), p.hi_closed};
      if (iv.hi < iv.lo) continue;
      raw.push_back(iv);
    }
    return IntervalSet::make(raw);
  }

  const std::string& str() const { return src_; }

 private:
  std::string src_;
  std::vector<Piece> pieces_;
};

}  // namespace lval
