#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lval/rational.hpp"

namespace lval {

/**
 * A function ℚ -> V that is constant on the open gaps between finitely many
 * breakpoints s₁ < … < s_N, takes its own value at each breakpoint, and is
 * V{} outside [s₁, s_N].
 *
 * The stored form is canonical: a breakpoint survives only if the value at
 * it, or the values on the open gaps to either side, differ. Canonical forms
 * make equality of functions decidable by structural comparison. This is the
 * shared carrier behind interval sets (V = bool), step functions
 * (V = Rational) and planar step functions (V = a one-dimensional step
 * function in the second coordinate).
 */
template <class V>
class Piecewise {
 public:
  using value_type = V;

  Piecewise() = default;

  /// Builds from explicit data and canonicalizes. `open.size()` must be
  /// `breakpoints.size() - 1` (or 0 when there are no breakpoints).
  static Piecewise from_parts(std::vector<Rational> breakpoints, std::vector<V> open, std::vector<V> point) {
    const std::size_t n = breakpoints.size();
    if (point.size() != n || open.size() != (n == 0 ? 0 : n - 1))
      throw std::invalid_argument("piecewise: need one point value per breakpoint and one open value per gap");
    for (std::size_t i = 1; i < n; ++i)
      if (!(breakpoints[i - 1] < breakpoints[i]))
        throw std::invalid_argument("piecewise: breakpoints must be strictly increasing");
    Piecewise f;
    f.bps_ = std::move(breakpoints);
    f.open_ = std::move(open);
    f.point_ = std::move(point);
    f.canonicalize();
    return f;
  }

  /// Samples `value_at` at every breakpoint and at the midpoint of every gap.
  template <class F>
  static Piecewise tabulate(std::vector<Rational> breakpoints, F value_at) {
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
    std::vector<V> open, point;
    point.reserve(breakpoints.size());
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
      point.push_back(value_at(breakpoints[i]));
      if (i + 1 < breakpoints.size()) open.push_back(value_at((breakpoints[i] + breakpoints[i + 1]) / 2));
    }
    return from_parts(std::move(breakpoints), std::move(open), std::move(point));
  }

  const std::vector<Rational>& breakpoints() const { return bps_; }
  const std::vector<V>& open_values() const { return open_; }
  const std::vector<V>& point_values() const { return point_; }
  bool is_zero() const { return bps_.empty(); }

  V at(const Rational& x) const {
    if (bps_.empty() || x < bps_.front() || x > bps_.back()) return V{};
    auto it = std::lower_bound(bps_.begin(), bps_.end(), x);
    auto i = static_cast<std::size_t>(it - bps_.begin());
    if (*it == x) return point_[i];
    return open_[i - 1];
  }

  /// Pointwise image under `op`, possibly into another value type.
  template <class F>
  auto map(F op) const -> Piecewise<decltype(op(std::declval<const V&>()))> {
    using W = decltype(op(std::declval<const V&>()));
    std::vector<W> open, point;
    for (const auto& v : open_) open.push_back(op(v));
    for (const auto& v : point_) point.push_back(op(v));
    return Piecewise<W>::from_parts(bps_, std::move(open), std::move(point));
  }

  /// Pointwise combination on the common refinement of both breakpoint sets.
  template <class F>
  static auto combine(const Piecewise& f, const Piecewise& g, F op)
      -> Piecewise<decltype(op(std::declval<const V&>(), std::declval<const V&>()))> {
    using W = decltype(op(std::declval<const V&>(), std::declval<const V&>()));
    std::vector<Rational> merged;
    merged.reserve(f.bps_.size() + g.bps_.size());
    std::merge(f.bps_.begin(), f.bps_.end(), g.bps_.begin(), g.bps_.end(), std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    return Piecewise<W>::tabulate(std::move(merged), [&](const Rational& x) { return op(f.at(x), g.at(x)); });
  }

  friend bool operator==(const Piecewise&, const Piecewise&) = default;

 private:
  void canonicalize() {
    const std::size_t n = bps_.size();
    if (n == 0) return;
    const V zero{};
    std::vector<bool> keep(n);
    for (std::size_t i = 0; i < n; ++i) {
      const V& left = i == 0 ? zero : open_[i - 1];
      const V& right = i + 1 == n ? zero : open_[i];
      keep[i] = !(left == point_[i] && point_[i] == right);
    }
    std::vector<Rational> bps;
    std::vector<V> open, point;
    for (std::size_t i = 0; i < n; ++i) {
      if (!keep[i]) continue;
      if (!bps.empty()) open.push_back(open_[i - 1]);  // value on the merged gap ending at s_i
      bps.push_back(bps_[i]);
      point.push_back(point_[i]);
    }
    bps_ = std::move(bps);
    open_ = std::move(open);
    point_ = std::move(point);
  }

  std::vector<Rational> bps_;
  std::vector<V> open_;
  std::vector<V> point_;
};

}  // namespace lval
