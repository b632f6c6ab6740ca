#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lval/check_report.hpp"
#include "lval/instances.hpp"
#include "lval/interval_set.hpp"
#include "lval/piecewise.hpp"
#include "lval/random.hpp"
#include "lval/step_function.hpp"
#include "lval/valuation.hpp"

namespace lval {

/// μ_{X×Y}(A×B) = μ(A)·μ(B).
inline Rational mu_XY(const IntervalSet& a, const IntervalSet& b) { return mu_S(a) * mu_S(b); }

/// λ·1_{A×B}.
struct RectTerm {
  Rational coefficient;
  IntervalSet base_x;
  IntervalSet base_y;
};

/**
 * A step function on ℚ², stored as a step function in x whose values are
 * step functions in y: f(x, y) = outer.at(x).at(y). Both levels are
 * canonical, so equal functions have equal representations. Values on grid
 * lines are kept for pointwise lattice operations; integrals ignore them.
 */
class StepFn2D {
 public:
  StepFn2D() = default;
  explicit StepFn2D(Piecewise<StepFn> outer) : outer_(std::move(outer)) {}

  const Piecewise<StepFn>& outer() const { return outer_; }
  bool is_zero() const { return outer_.is_zero(); }
  Rational at(const Rational& x, const Rational& y) const { return outer_.at(x).at(y); }

  friend bool operator==(const StepFn2D&, const StepFn2D&) = default;

 private:
  Piecewise<StepFn> outer_;
};

/// Σ λₙ·1_{Aₙ×Bₙ}; overlapping terms add up cell-wise.
inline StepFn2D step2d_make(const std::vector<RectTerm>& terms) {
  std::vector<Rational> bps;
  for (const auto& t : terms)
    for (const auto& p : t.base_x.pieces()) {
      bps.push_back(p.lo);
      bps.push_back(p.hi);
    }
  return StepFn2D(Piecewise<StepFn>::tabulate(std::move(bps), [&](const Rational& x) {
    StepFn column;
    for (const auto& t : terms)
      if (t.base_x.contains(x)) column = column + indicator(t.base_y, t.coefficient);
    return column;
  }));
}

inline StepFn2D step2d_combine(StepOp kind, const StepFn2D& f, const StepFn2D& g) {
  return StepFn2D(Piecewise<StepFn>::combine(f.outer(), g.outer(),
                                             [kind](const StepFn& u, const StepFn& v) { return step_combine(kind, u, v); }));
}

inline StepFn2D operator+(const StepFn2D& f, const StepFn2D& g) { return step2d_combine(StepOp::add, f, g); }

/// Open cell (x_lo, x_hi) × (y_lo, y_hi) carrying a nonzero value.
struct Cell {
  Rational x_lo, x_hi, y_lo, y_hi, value;
};

/// The grid view: every nonzero open cell of the refinement.
inline std::vector<Cell> cells(const StepFn2D& f) {
  std::vector<Cell> out;
  const auto& xs = f.outer().breakpoints();
  const auto& cols = f.outer().open_values();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const auto& ys = cols[i].breakpoints();
    const auto& vals = cols[i].open_values();
    for (std::size_t k = 0; k < vals.size(); ++k)
      if (!vals[k].is_zero()) out.push_back({xs[i], xs[i + 1], ys[k], ys[k + 1], vals[k]});
  }
  return out;
}

/// φ_{X×Y}(f) = Σ value·area over the cells.
inline Rational phi_XY(const StepFn2D& f) {
  Rational total = 0;
  for (const auto& c : cells(f)) total += c.value * (c.x_hi - c.x_lo) * (c.y_hi - c.y_lo);
  return total;
}

/// ℱ_X(f)(y) = φ_S(f^y): integrate out x, leaving a step function in y.
inline StepFn partial_integrate_x(const StepFn2D& f) {
  const auto& xs = f.outer().breakpoints();
  const auto& cols = f.outer().open_values();
  StepFn out;
  for (std::size_t i = 0; i < cols.size(); ++i) out = out + scale(xs[i + 1] - xs[i], cols[i]);
  return out;
}

/// ℱ_Y(f)(x) = φ_S(f(x, ·)).
inline StepFn partial_integrate_y(const StepFn2D& f) {
  return f.outer().map([](const StepFn& column) { return phi_S(column); });
}

/// f^y: x ↦ f(x, y).
inline StepFn slice(const StepFn2D& f, const Rational& y) {
  return f.outer().map([&](const StepFn& column) { return column.at(y); });
}

/// Every y-breakpoint of every column.
inline std::vector<Rational> y_gridlines(const StepFn2D& f) {
  std::vector<Rational> ys;
  for (const auto& c : f.outer().open_values()) ys.insert(ys.end(), c.breakpoints().begin(), c.breakpoints().end());
  for (const auto& c : f.outer().point_values()) ys.insert(ys.end(), c.breakpoints().begin(), c.breakpoints().end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  return ys;
}

struct SliceSample {
  Rational y;
  Rational partial;       // ℱ_X(f)(y)
  Rational slice_integral;  // φ_S(f^y)
};

struct FubiniResult {
  Rational lhs;   // φ_S(ℱ_X f)
  Rational rhs;   // direct Σ over cells
  Rational lhs_y; // φ_S(ℱ_Y f)
  bool equal = false;
  std::vector<SliceSample> slices;
  CheckReport report;
};

/**
 * φ_Y∘ℱ_X = φ_{X×Y} exactly, the symmetric order as well, and
 * ℱ_X(f)(y) = φ_S(f^y) at `slice_samples` values of y: gridlines first,
 * then seeded random points.
 */
inline FubiniResult fubini_check(const StepFn2D& f, std::size_t slice_samples = 20, std::uint64_t seed = 0) {
  FubiniResult r;
  StepFn fx = partial_integrate_x(f);
  r.lhs = phi_S(fx);
  r.rhs = phi_XY(f);
  r.lhs_y = phi_S(partial_integrate_y(f));
  r.equal = r.lhs == r.rhs;
  auto wit = [&] { return "lhs=" + r.lhs.str() + " rhs=" + r.rhs.str() + " y-first=" + r.lhs_y.str(); };
  r.report.record("fubini", r.equal, wit);
  r.report.record("fubini_y_first", r.lhs_y == r.rhs, wit);

  std::vector<Rational> ys = y_gridlines(f);
  if (ys.size() > slice_samples) ys.resize(slice_samples);
  Rng rng(seed);
  Rational lo = -1, hi = 1;
  if (auto all = y_gridlines(f); !all.empty()) {
    lo = all.front() - 1;
    hi = all.back() + 1;
  }
  while (ys.size() < slice_samples) {
    Rational u(Integer(uniform_int(rng, 0, 1000)), Integer(1000));
    ys.push_back(lo + (hi - lo) * u);
  }
  r.report.declare("slice_consistency");
  for (const auto& y : ys) {
    SliceSample s{y, fx.at(y), phi_S(slice(f, y))};
    r.report.record("slice_consistency", s.partial == s.slice_integral,
                    [&] { return "y=" + y.str() + " F_X(f)(y)=" + s.partial.str() + " phi(f^y)=" + s.slice_integral.str(); });
    r.slices.push_back(std::move(s));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Rectangle sets: finite unions of rectangles as 0/1 planar step functions.

inline bool is_indicator(const StepFn2D& f) {
  auto ok = [](const StepFn& g) {
    for (const auto& v : g.open_values())
      if (!(v == 0 || v == 1)) return false;
    for (const auto& v : g.point_values())
      if (!(v == 0 || v == 1)) return false;
    return true;
  };
  for (const auto& c : f.outer().open_values())
    if (!ok(c)) return false;
  for (const auto& c : f.outer().point_values())
    if (!ok(c)) return false;
  return true;
}

inline std::string step2d_str(const StepFn2D& f) {
  std::string out;
  for (const auto& c : cells(f))
    out += (out.empty() ? "" : " + ") + c.value.str() + "*(" + c.x_lo.str() + "," + c.x_hi.str() + ")x(" +
           c.y_lo.str() + "," + c.y_hi.str() + ")";
  return out.empty() ? "0" : out;
}

struct RectSetLattice {
  using element_type = StepFn2D;
  StepFn2D meet(const StepFn2D& a, const StepFn2D& b) const { return step2d_combine(StepOp::meet, a, b); }
  StepFn2D join(const StepFn2D& a, const StepFn2D& b) const { return step2d_combine(StepOp::join, a, b); }
  bool leq(const StepFn2D& a, const StepFn2D& b) const { return meet(a, b) == a; }
  bool contains(const StepFn2D& a) const { return is_indicator(a); }
  std::string describe(const StepFn2D& a) const { return step2d_str(a); }
};

inline Valuation<RectSetLattice> mu_XY_valuation() {
  return Valuation<RectSetLattice>("mu_XY", RectSetLattice{}, [](const StepFn2D& a) { return GroupElem(phi_XY(a)); });
}

/// Union of up to `max_rects` rectangles with random boundary kinds.
inline Sampler<StepFn2D> rect_set_sampler(int max_rects = 3) {
  return [max_rects](Rng& rng) {
    RectSetLattice l;
    StepFn2D acc;
    auto count = uniform_int(rng, 0, max_rects);
    for (std::int64_t i = 0; i < count; ++i) {
      IntervalSet a = IntervalSet::make({detail::sample_interval(rng)});
      IntervalSet b = IntervalSet::make({detail::sample_interval(rng)});
      acc = l.join(acc, step2d_make({{1, a, b}}));
    }
    return acc;
  };
}

/// Random Σ λₙ·1_{Aₙ×Bₙ} with up to `max_terms` terms whose interval
/// endpoints come from pools of `axis_points` values per axis, so each axis
/// has at most that many breakpoints.
inline std::vector<RectTerm> random_rect_terms(Rng& rng, int max_terms = 10, int axis_points = 16) {
  auto pool = [&] {
    std::vector<Rational> p;
    for (int i = 0; i < axis_points; ++i) p.push_back(random_rational(rng, 30, 4));
    return p;
  };
  std::vector<Rational> px = pool(), py = pool();
  auto pick = [&](const std::vector<Rational>& p) {
    Rational a = p[uniform_int(rng, 0, axis_points - 1)], b = p[uniform_int(rng, 0, axis_points - 1)];
    if (b < a) std::swap(a, b);
    bool lc = coin(rng), hc = coin(rng);
    if (a == b) lc = hc = true;
    return IntervalSet::make({{a, lc, b, hc}});
  };
  std::vector<RectTerm> terms;
  auto count = uniform_int(rng, 1, max_terms);
  for (std::int64_t i = 0; i < count; ++i) terms.push_back({random_rational(rng, 9, 3), pick(px), pick(py)});
  return terms;
}

}  // namespace lval
