#pragma once

#include <string>
#include <vector>

#include "lval/errors.hpp"
#include "lval/piecewise.hpp"
#include "lval/rational.hpp"

namespace lval {

/// One interval with explicit boundary kinds. [a,a] is a singleton; (a,a),
/// [a,a) and (a,a] are empty.
struct Interval {
  Rational lo;
  bool lo_closed = true;
  Rational hi;
  bool hi_closed = true;

  static Interval closed(Rational lo, Rational hi) { return {std::move(lo), true, std::move(hi), true}; }
  static Interval open(Rational lo, Rational hi) { return {std::move(lo), false, std::move(hi), false}; }
  static Interval closed_open(Rational lo, Rational hi) { return {std::move(lo), true, std::move(hi), false}; }
  static Interval open_closed(Rational lo, Rational hi) { return {std::move(lo), false, std::move(hi), true}; }
  static Interval point(const Rational& x) { return {x, true, x, true}; }

  bool empty() const { return hi < lo || (lo == hi && !(lo_closed && hi_closed)); }
  bool contains(const Rational& x) const {
    return (lo_closed ? lo <= x : lo < x) && (hi_closed ? x <= hi : x < hi);
  }
  Rational length() const { return empty() ? Rational(0) : hi - lo; }

  std::string str() const {
    if (lo == hi && lo_closed && hi_closed) return "{" + lo.str() + "}";
    return std::string(lo_closed ? "[" : "(") + lo.str() + ", " + hi.str() + (hi_closed ? "]" : ")");
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class SetOp { meet, join, diff, symmdiff };

/**
 * Finite disjoint union of rational-endpoint intervals, kept canonical:
 * pieces sorted, pairwise disjoint and never adjacent (no two pieces could be
 * merged into one interval). Half-open pieces and singletons are stored
 * natively, since differences of closed and open intervals produce them.
 */
class IntervalSet {
 public:
  IntervalSet() = default;

  /// Union of the given intervals. Rejects lo > hi; empty intervals such as
  /// (a,a) contribute nothing.
  static IntervalSet make(const std::vector<Interval>& raw) {
    std::vector<Rational> bps;
    std::vector<Interval> kept;
    for (const auto& iv : raw) {
      if (iv.hi < iv.lo)
        throw std::invalid_argument("interval with lo > hi: " + iv.lo.str() + " > " + iv.hi.str());
      if (iv.empty()) continue;
      bps.push_back(iv.lo);
      bps.push_back(iv.hi);
      kept.push_back(iv);
    }
    return from_indicator(Piecewise<bool>::tabulate(std::move(bps), [&](const Rational& x) {
      for (const auto& iv : kept)
        if (iv.contains(x)) return true;
      return false;
    }));
  }

  static IntervalSet from_indicator(const Piecewise<bool>& ind) {
    IntervalSet out;
    const auto& s = ind.breakpoints();
    const auto& pt = ind.point_values();
    const auto& op = ind.open_values();
    // Regions in order: {s0}, (s0,s1), {s1}, ..., {s_{n-1}}.
    const std::size_t regions = s.empty() ? 0 : 2 * s.size() - 1;
    auto region_on = [&](std::size_t r) { return r % 2 == 0 ? bool(pt[r / 2]) : bool(op[r / 2]); };
    std::size_t r = 0;
    while (r < regions) {
      if (!region_on(r)) {
        ++r;
        continue;
      }
      Interval piece;
      piece.lo = s[r / 2];
      piece.lo_closed = r % 2 == 0;
      std::size_t last = r;
      while (last + 1 < regions && region_on(last + 1)) ++last;
      if (last % 2 == 0) {
        piece.hi = s[last / 2];
        piece.hi_closed = true;
      } else {
        piece.hi = s[last / 2 + 1];
        piece.hi_closed = false;
      }
      out.pieces_.push_back(piece);
      r = last + 1;
    }
    return out;
  }

  Piecewise<bool> indicator() const {
    std::vector<Rational> bps;
    for (const auto& p : pieces_) {
      bps.push_back(p.lo);
      bps.push_back(p.hi);
    }
    return Piecewise<bool>::tabulate(std::move(bps), [this](const Rational& x) { return contains(x); });
  }

  const std::vector<Interval>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

  /// Membership by direct scan of the pieces.
  bool contains(const Rational& x) const {
    for (const auto& p : pieces_)
      if (p.contains(x)) return true;
    return false;
  }

  /// μ_S: the sum of piece lengths. Boundary kinds do not matter.
  Rational measure() const {
    Rational total = 0;
    for (const auto& p : pieces_) total += p.hi - p.lo;
    return total;
  }

  std::string str() const {
    if (pieces_.empty()) return "∅";
    std::string out;
    for (std::size_t i = 0; i < pieces_.size(); ++i) out += (i ? " ∪ " : "") + pieces_[i].str();
    return out;
  }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> pieces_;
};

inline IntervalSet iset_op(SetOp kind, const IntervalSet& a, const IntervalSet& b) {
  auto op = [kind](bool x, bool y) {
    switch (kind) {
      case SetOp::meet: return x && y;
      case SetOp::join: return x || y;
      case SetOp::diff: return x && !y;
      case SetOp::symmdiff: return x != y;
    }
    return false;
  };
  return IntervalSet::from_indicator(Piecewise<bool>::combine(a.indicator(), b.indicator(), op));
}

inline IntervalSet operator&(const IntervalSet& a, const IntervalSet& b) { return iset_op(SetOp::meet, a, b); }
inline IntervalSet operator|(const IntervalSet& a, const IntervalSet& b) { return iset_op(SetOp::join, a, b); }
inline IntervalSet operator-(const IntervalSet& a, const IntervalSet& b) { return iset_op(SetOp::diff, a, b); }
inline IntervalSet operator^(const IntervalSet& a, const IntervalSet& b) { return iset_op(SetOp::symmdiff, a, b); }

inline Rational mu_S(const IntervalSet& a) { return a.measure(); }

/// Interval sets under ∩ / ∪ ordered by inclusion.
struct IntervalSetLattice {
  using element_type = IntervalSet;
  IntervalSet meet(const IntervalSet& a, const IntervalSet& b) const { return a & b; }
  IntervalSet join(const IntervalSet& a, const IntervalSet& b) const { return a | b; }
  bool leq(const IntervalSet& a, const IntervalSet& b) const { return (a - b).empty(); }
  bool contains(const IntervalSet&) const { return true; }
  std::string describe(const IntervalSet& a) const { return a.str(); }
};

}  // namespace lval
