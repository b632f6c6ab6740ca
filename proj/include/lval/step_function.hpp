#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lval/interval_set.hpp"
#include "lval/piecewise.hpp"
#include "lval/rational.hpp"

namespace lval {

/// Rational step function on ℚ in canonical form.
using StepFn = Piecewise<Rational>;

struct StepPart {
  Interval where;
  Rational value;
};

struct PointAssignment {
  Rational at;
  Rational value;
};

/// Σ value·1_where over the parts, then the point assignments override the
/// value at their points. Two assignments to one point must agree.
inline StepFn step_make(const std::vector<StepPart>& parts, const std::vector<PointAssignment>& points = {}) {
  std::map<Rational, Rational> fixed;
  for (const auto& p : points) {
    auto [it, inserted] = fixed.emplace(p.at, p.value);
    if (!inserted && !(it->second == p.value))
      throw std::invalid_argument("conflicting values at point " + p.at.str() + ": " + it->second.str() + " and " +
                                  p.value.str());
  }
  std::vector<Rational> bps;
  for (const auto& part : parts) {
    if (part.where.hi < part.where.lo)
      throw std::invalid_argument("interval with lo > hi: " + part.where.lo.str() + " > " + part.where.hi.str());
    bps.push_back(part.where.lo);
    bps.push_back(part.where.hi);
  }
  for (const auto& [x, v] : fixed) bps.push_back(x);
  return StepFn::tabulate(std::move(bps), [&](const Rational& x) {
    if (auto it = fixed.find(x); it != fixed.end()) return it->second;
    Rational sum = 0;
    for (const auto& part : parts)
      if (part.where.contains(x)) sum += part.value;
    return sum;
  });
}

/// λ·1_A for an interval set A.
inline StepFn indicator(const IntervalSet& a, const Rational& lambda = 1) {
  return a.indicator().map([&](bool on) { return on ? lambda : Rational(0); });
}

enum class StepOp { meet, join, add, sub };

inline StepFn step_combine(StepOp kind, const StepFn& f, const StepFn& g) {
  return StepFn::combine(f, g, [kind](const Rational& x, const Rational& y) {
    switch (kind) {
      case StepOp::meet: return min(x, y);
      case StepOp::join: return max(x, y);
      case StepOp::add: return x + y;
      case StepOp::sub: return x - y;
    }
    return Rational(0);
  });
}

inline StepFn operator+(const StepFn& f, const StepFn& g) { return step_combine(StepOp::add, f, g); }
inline StepFn operator-(const StepFn& f, const StepFn& g) { return step_combine(StepOp::sub, f, g); }
inline StepFn step_meet(const StepFn& f, const StepFn& g) { return step_combine(StepOp::meet, f, g); }
inline StepFn step_join(const StepFn& f, const StepFn& g) { return step_combine(StepOp::join, f, g); }
inline StepFn scale(const Rational& lambda, const StepFn& f) {
  return f.map([&](const Rational& v) { return lambda * v; });
}
inline StepFn step_abs(const StepFn& f) {
  return f.map([](const Rational& v) { return abs(v); });
}

/// φ_S(f) = Σ cₙ·(sₙ₊₁ − sₙ) over the open gaps.
inline Rational phi_S(const StepFn& f) {
  const auto& s = f.breakpoints();
  const auto& c = f.open_values();
  Rational total = 0;
  for (std::size_t i = 0; i < c.size(); ++i) total += c[i] * (s[i + 1] - s[i]);
  return total;
}

inline std::string step_str(const StepFn& f) {
  if (f.is_zero()) return "0";
  const auto& s = f.breakpoints();
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += (i ? " " : "") + ("{" + s[i].str() + "}:" + f.point_values()[i].str());
    if (i + 1 < s.size()) out += " (..):" + f.open_values()[i].str();
  }
  return out;
}

/// Step functions under pointwise min / max.
struct StepFnLattice {
  using element_type = StepFn;
  StepFn meet(const StepFn& f, const StepFn& g) const { return step_meet(f, g); }
  StepFn join(const StepFn& f, const StepFn& g) const { return step_join(f, g); }
  bool leq(const StepFn& f, const StepFn& g) const { return step_meet(f, g) == f; }
  bool contains(const StepFn&) const { return true; }
  std::string describe(const StepFn& f) const { return step_str(f); }
};

}  // namespace lval
