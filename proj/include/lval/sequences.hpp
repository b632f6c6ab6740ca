#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lval/check_report.hpp"
#include "lval/errors.hpp"
#include "lval/group.hpp"
#include "lval/interval_set.hpp"
#include "lval/lattice.hpp"
#include "lval/valuation.hpp"

namespace lval {

enum class Direction { decreasing, increasing };

/// ε > 0 ↦ a stage N such that φ(a_N) is within ε of the limit value.
using Modulus = std::function<std::size_t(const Rational&)>;

class monotonicity_violation : public std::invalid_argument {
 public:
  explicit monotonicity_violation(std::size_t stage)
      : std::invalid_argument("sequence not monotone at stage " + std::to_string(stage)), stage_(stage) {}
  std::size_t stage() const { return stage_; }

 private:
  std::size_t stage_;
};

/// ⌈1/ε⌉, the usual modulus for sequences whose values approach the limit like 1/n.
inline std::size_t inverse_modulus(const Rational& eps) {
  if (eps.sign() <= 0) throw std::invalid_argument("modulus needs eps > 0");
  return static_cast<std::size_t>(ceil(Rational(1) / eps));
}

/**
 * A monotone sequence a₁, a₂, … produced on demand (stages are 1-based),
 * together with a convergence modulus for the φ-values. Monotonicity is
 * verified up to the sanity depth at construction; beyond that the producer
 * is trusted.
 */
template <Lattice L>
class MonoSeq {
 public:
  using element_type = typename L::element_type;
  using Producer = std::function<element_type(std::size_t)>;

  static MonoSeq make(Direction direction, L lattice, Producer producer, Modulus modulus, std::string valuation,
                      std::size_t sanity_depth) {
    if (!producer) throw std::invalid_argument("sequence needs a producer");
    if (!modulus) throw std::invalid_argument("sequence needs a convergence modulus");
    MonoSeq s(direction, std::move(lattice), std::move(producer), std::move(modulus), std::move(valuation));
    element_type prev = s.at(1);
    for (std::size_t k = 2; k <= sanity_depth; ++k) {
      element_type cur = s.at(k);
      bool ok = direction == Direction::decreasing ? s.lattice_.leq(cur, prev) : s.lattice_.leq(prev, cur);
      if (!ok) throw monotonicity_violation(k);
      prev = std::move(cur);
    }
    return s;
  }

  Direction direction() const { return direction_; }
  const L& lattice() const { return lattice_; }
  const std::string& valuation() const { return valuation_; }
  const Producer& producer() const { return producer_; }
  const Modulus& modulus() const { return modulus_; }

  element_type at(std::size_t n) const {
    if (n == 0) throw std::out_of_range("sequence stages start at 1");
    return producer_(n);
  }
  std::size_t stage_for(const Rational& eps) const {
    if (eps.sign() <= 0) throw std::invalid_argument("modulus needs eps > 0");
    return std::max<std::size_t>(1, modulus_(eps));
  }

 private:
  MonoSeq(Direction d, L l, Producer p, Modulus m, std::string v)
      : direction_(d), lattice_(std::move(l)), producer_(std::move(p)), modulus_(std::move(m)), valuation_(std::move(v)) {}

  Direction direction_;
  L lattice_;
  Producer producer_;
  Modulus modulus_;
  std::string valuation_;
};

/// ⋀ₙ aₙ for a decreasing φ-convergent sequence, held at finite stage.
template <Lattice L>
struct PiElem {
  MonoSeq<L> seq;
  explicit PiElem(MonoSeq<L> s) : seq(std::move(s)) {
    if (seq.direction() != Direction::decreasing) throw std::invalid_argument("Π element needs a decreasing sequence");
  }
};

/// ⋁ₙ aₙ for an increasing φ-convergent sequence.
template <Lattice L>
struct SigmaElem {
  MonoSeq<L> seq;
  explicit SigmaElem(MonoSeq<L> s) : seq(std::move(s)) {
    if (seq.direction() != Direction::increasing) throw std::invalid_argument("Σ element needs an increasing sequence");
  }
};

namespace detail {

template <Lattice L>
void require_same_valuation(const MonoSeq<L>& s, const Valuation<L>& phi) {
  if (s.valuation() != phi.name())
    throw shape_error("valuation mismatch: sequence certified for " + s.valuation() + ", asked for " + phi.name());
}

}  // namespace detail

/// φ(a_{N(ε)}): within ε of ⋀ₙ φ(aₙ) by the modulus contract.
template <Lattice L>
GroupElem pi_value(const PiElem<L>& x, const Valuation<L>& phi, const Rational& eps) {
  detail::require_same_valuation(x.seq, phi);
  return phi(x.seq.at(x.seq.stage_for(eps)));
}

template <Lattice L>
GroupElem sigma_value(const SigmaElem<L>& x, const Valuation<L>& phi, const Rational& eps) {
  detail::require_same_valuation(x.seq, phi);
  return phi(x.seq.at(x.seq.stage_for(eps)));
}

/// Stage-wise meet or join of two Π elements. The modulus
/// ε ↦ max(N_x(ε/2), N_y(ε/2)) is sound because d_φ(aₙ∧bₙ, a∧b) +
/// d_φ(aₙ∨bₙ, a∨b) ≤ d_φ(aₙ, a) + d_φ(bₙ, b).
template <Lattice L>
PiElem<L> pi_combine(LatticeOp kind, const PiElem<L>& x, const PiElem<L>& y, const Valuation<L>& phi) {
  if (kind == LatticeOp::leq) throw std::invalid_argument("pi_combine takes meet or join");
  detail::require_same_valuation(x.seq, phi);
  detail::require_same_valuation(y.seq, phi);
  auto xs = x.seq;
  auto ys = y.seq;
  L lat = phi.lattice();
  auto producer = [xs, ys, lat, kind](std::size_t n) {
    return kind == LatticeOp::meet ? lat.meet(xs.at(n), ys.at(n)) : lat.join(xs.at(n), ys.at(n));
  };
  auto modulus = [xs, ys](const Rational& eps) {
    return std::max(xs.stage_for(eps / 2), ys.stage_for(eps / 2));
  };
  return PiElem<L>(MonoSeq<L>::make(Direction::decreasing, lat, producer, modulus, phi.name(), 0));
}

// ---------------------------------------------------------------------------
// Finite-stage order verdicts.

struct Verdict {
  enum class Kind { proved, refuted, unknown };
  Kind kind = Kind::unknown;
  std::size_t stage = 0;  // witnessing stage, or the depth for unknown

  static Verdict proved_at(std::size_t n) { return {Kind::proved, n}; }
  static Verdict refuted_at(std::size_t n) { return {Kind::refuted, n}; }
  static Verdict unknown_at(std::size_t depth) { return {Kind::unknown, depth}; }

  std::string str() const {
    switch (kind) {
      case Kind::proved: return "proved_at_stage(" + std::to_string(stage) + ")";
      case Kind::refuted: return "refuted_at_stage(" + std::to_string(stage) + ")";
      case Kind::unknown: break;
    }
    return "unknown(" + std::to_string(stage) + ")";
  }
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/**
 * What the caller asserts about the infinite tails. Every clause is verified
 * on stages ≤ depth before it is used.
 *  - y_constant_from = k: y_m = y_k for all m ≥ k.
 *  - stagewise: x_m ≤ y_m for every m.
 *  - x_lower_bound = b: b ≤ x_n for every n.
 */
template <class E>
struct LeqCertificate {
  std::optional<std::size_t> y_constant_from;
  bool stagewise = false;
  std::optional<E> x_lower_bound;
};

/// Decides ⋀ xₙ ≤ ⋀ yₘ as far as the truncation and the certificate allow.
template <Lattice L>
Verdict pi_leq_at_depth(const PiElem<L>& x, const PiElem<L>& y, std::size_t depth,
                        const LeqCertificate<typename L::element_type>& cert = {}) {
  if (depth == 0) throw std::invalid_argument("depth must be at least 1");
  const L& l = x.seq.lattice();
  std::vector<typename L::element_type> xs, ys;
  for (std::size_t n = 1; n <= depth; ++n) {
    xs.push_back(x.seq.at(n));
    ys.push_back(y.seq.at(n));
  }

  if (cert.x_lower_bound) {
    const auto& b = *cert.x_lower_bound;
    bool certified = true;
    for (const auto& xn : xs) certified = certified && l.leq(b, xn);
    if (certified)
      for (std::size_t m = 0; m < depth; ++m)
        if (!l.leq(b, ys[m])) return Verdict::refuted_at(m + 1);
  }

  bool tail_ok = false;
  if (cert.y_constant_from && *cert.y_constant_from >= 1 && *cert.y_constant_from <= depth) {
    tail_ok = true;
    for (std::size_t m = *cert.y_constant_from; m <= depth; ++m)
      tail_ok = tail_ok && ys[m - 1] == ys[*cert.y_constant_from - 1];
  }
  if (cert.stagewise) {
    bool ok = true;
    for (std::size_t m = 0; m < depth; ++m) ok = ok && l.leq(xs[m], ys[m]);
    tail_ok = tail_ok || ok;
  }
  if (!tail_ok) return Verdict::unknown_at(depth);

  std::size_t witness = 0;
  for (std::size_t m = 0; m < depth; ++m) {
    std::optional<std::size_t> first;
    for (std::size_t n = 0; n < depth && !first; ++n)
      if (l.leq(xs[n], ys[m])) first = n + 1;
    if (!first) return Verdict::unknown_at(depth);
    witness = std::max(witness, *first);
  }
  return Verdict::proved_at(witness);
}

// ---------------------------------------------------------------------------
// Upper and lower limits.

template <class E>
struct Limits {
  E ulim;
  E llim;
  bool convergent;
};

/**
 * ulim = ⋀_N ⋁_{n≥N} aₙ and llim = ⋁_N ⋀_{n≥N} aₙ for the eventually periodic
 * sequence `preperiod` followed by `cycle` repeated forever. A tail from N
 * visits every remaining preperiod entry and the full cycle, so the window
 * of one period after the preperiod is exact.
 */
inline Limits<std::size_t> limits_finite(const FiniteLattice& l, const std::vector<std::size_t>& preperiod,
                                         const std::vector<std::size_t>& cycle) {
  if (cycle.empty()) throw std::invalid_argument("eventually periodic sequence needs a nonempty period");
  for (auto a : preperiod) require_member(l, a);
  for (auto a : cycle) require_member(l, a);
  std::vector<std::size_t> seq = preperiod;
  seq.insert(seq.end(), cycle.begin(), cycle.end());
  std::size_t cyc_join = cycle[0], cyc_meet = cycle[0];
  for (auto a : cycle) {
    cyc_join = l.join(cyc_join, a);
    cyc_meet = l.meet(cyc_meet, a);
  }
  std::optional<std::size_t> ulim, llim;
  for (std::size_t n0 = 0; n0 <= preperiod.size(); ++n0) {
    std::size_t sup = cyc_join, inf = cyc_meet;
    for (std::size_t n = n0; n < preperiod.size(); ++n) {
      sup = l.join(sup, seq[n]);
      inf = l.meet(inf, seq[n]);
    }
    ulim = ulim ? l.meet(*ulim, sup) : sup;
    llim = llim ? l.join(*llim, inf) : inf;
  }
  return {*ulim, *llim, *ulim == *llim};
}

struct PhiLimitRow {
  std::size_t outer;  // N
  GroupElem sup;      // ⋁_{N≤n≤depth} φ(a_N∨⋯∨aₙ)
  GroupElem inf;      // ⋀_{N≤n≤depth} φ(a_N∧⋯∧aₙ)
};

struct PhiLimits {
  GroupElem pulim;
  GroupElem pllim;
  std::vector<PhiLimitRow> trace;
};

/**
 * Truncated upper/lower φ-limits. The outer index runs over 1..depth−1 so
 * that every inner supremum sees at least two terms; the values are exact
 * for the truncation and approximate the true limits.
 */
template <Lattice L>
PhiLimits phi_limits_at_depth(const Valuation<L>& phi, const std::function<typename L::element_type(std::size_t)>& seq,
                              std::size_t depth) {
  if (depth < 2) throw std::invalid_argument("phi limits need depth ≥ 2");
  const L& l = phi.lattice();
  std::vector<typename L::element_type> a;
  for (std::size_t n = 1; n <= depth; ++n) a.push_back(seq(n));
  PhiLimits out;
  for (std::size_t N = 1; N < depth; ++N) {
    auto up = a[N - 1], down = a[N - 1];
    GroupElem sup = phi(up), inf = phi(down);
    for (std::size_t n = N + 1; n <= depth; ++n) {
      up = l.join(up, a[n - 1]);
      down = l.meet(down, a[n - 1]);
      sup = join(sup, phi(up));
      inf = meet(inf, phi(down));
    }
    out.trace.push_back({N, sup, inf});
    out.pulim = N == 1 ? sup : meet(out.pulim, sup);
    out.pllim = N == 1 ? inf : join(out.pllim, inf);
  }
  return out;
}

enum class ConvergenceTheorem { fatou, dct };

/**
 * Finite-depth check of Fatou (φ(ulim aₙ) = pulim) or dominated convergence
 * (lim φ(aₙ) = φ(llim aₙ)). The limit element must be supplied by the caller:
 * it is only stage-computable for carriers with a known tail structure.
 */
template <Lattice L>
CheckReport convergence_theorem_check(
    ConvergenceTheorem kind, const Valuation<L>& phi, const std::function<typename L::element_type(std::size_t)>& seq,
    const std::optional<std::pair<typename L::element_type, typename L::element_type>>& bounds,
    const std::optional<typename L::element_type>& limit, std::size_t depth, const Rational& tol) {
  if (!limit)
    throw unsupported_operation("limit element is not stage-computable here; supply it for the check");
  if (kind == ConvergenceTheorem::dct && !bounds)
    throw std::invalid_argument("dominated convergence needs lower and upper bounds");
  const L& l = phi.lattice();
  auto close = [&](const GroupElem& x, const GroupElem& y) { return abs(sub(x, y).as_rational()) <= tol; };
  PhiLimits lim = phi_limits_at_depth(phi, seq, depth);
  GroupElem target = phi(*limit);
  CheckReport report;
  auto wit = [&] {
    return "phi(limit)=" + target.str() + " pulim~" + lim.pulim.str() + " pllim~" + lim.pllim.str() +
           " phi(a_depth)=" + phi(seq(depth)).str();
  };
  report.record("pllim_le_pulim", leq(lim.pllim, lim.pulim), wit);
  if (kind == ConvergenceTheorem::fatou) {
    report.record("fatou_identity", close(target, lim.pulim), wit);
  } else {
    for (std::size_t n = 1; n <= depth; ++n) {
      auto an = seq(n);
      report.record("dominated", l.leq(bounds->first, an) && l.leq(an, bounds->second),
                    [&] { return "stage " + std::to_string(n) + " escapes the bounds: " + l.describe(an); });
    }
    report.record("dct_identity", close(phi(seq(depth)), target), wit);
    report.record("dct_upper", close(lim.pulim, target), wit);
    report.record("dct_lower", close(lim.pllim, target), wit);
  }
  return report;
}

// ---------------------------------------------------------------------------
// ℚ is not R-complete: the √2 witness.

struct Sqrt2Stage {
  std::size_t n;
  Rational q;       // qₙ ↑ √2
  Rational r;       // rₙ ↓ √2 − 1
  Rational mu_A;    // μ([0, r₁])
  Rational mu_B;    // μ([rₙ, qₙ])
  Rational mu_AB;   // μ(Aₙ ∪ Bₙ)
  Rational gap;     // |qₙ² − 2|
};

struct Sqrt2Witness {
  std::vector<Sqrt2Stage> stages;
  bool q_strictly_increasing = true;
  bool q_below_sqrt2 = true;
  bool gap_decreasing = true;
  bool union_measure_is_q = true;
  bool b_measure_is_q_minus_r = true;
  std::size_t scanned_candidates = 0;  // p/d with d ≤ max_denominator and |p/d − q_depth| ≲ radius
  std::size_t rational_roots_found = 0;
};

/// Convergents pₖ/qₖ of √2 = [1; 2, 2, …]: those of even k lie below √2,
/// odd k above. qₙ takes the n-th lower convergent and rₙ the n-th upper one
/// minus 1. Aₙ = [0, r₁] and Bₙ = [rₙ, qₙ] as closed intervals.
/// The scan tests p² = 2d² for every d ≤ max_denominator and every p from
/// ⌊(q − radius)d⌋ to ⌈(q + radius)d⌉, q = q_depth.
inline Sqrt2Witness sqrt2_witness(std::size_t depth, std::int64_t max_denominator = 10000,
                                  const Rational& radius = Rational(1, 1000000)) {
  if (depth == 0) throw std::invalid_argument("depth must be at least 1");
  Sqrt2Witness w;
  std::vector<Rational> lower, upper;
  Integer p0 = 1, q0 = 1, p1 = 3, q1 = 2;
  while (lower.size() < depth || upper.size() < depth) {
    lower.emplace_back(p0, q0);
    upper.emplace_back(p1, q1);
    Integer p2 = 2 * p1 + p0, q2 = 2 * q1 + q0;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    Integer p3 = 2 * p1 + p0, q3 = 2 * q1 + q0;
    p0 = p1; q0 = q1; p1 = p3; q1 = q3;
  }
  const Rational r1 = upper[0] - 1;
  for (std::size_t n = 1; n <= depth; ++n) {
    Rational q = lower[n - 1], r = upper[n - 1] - 1;
    IntervalSet A = IntervalSet::make({Interval::closed(0, r1)});
    IntervalSet B = IntervalSet::make({Interval::closed(r, q)});
    Sqrt2Stage s{n, q, r, mu_S(A), mu_S(B), mu_S(A | B), abs(q * q - 2)};
    if (n > 1) {
      const auto& prev = w.stages.back();
      w.q_strictly_increasing = w.q_strictly_increasing && prev.q < q;
      w.gap_decreasing = w.gap_decreasing && s.gap < prev.gap;
    }
    w.q_below_sqrt2 = w.q_below_sqrt2 && q * q < 2;
    w.union_measure_is_q = w.union_measure_is_q && s.mu_AB == q;
    w.b_measure_is_q_minus_r = w.b_measure_is_q_minus_r && s.mu_B == q - r;
    w.stages.push_back(std::move(s));
  }
  const Rational& target = w.stages.back().q;
  for (std::int64_t den = 1; den <= max_denominator; ++den) {
    Integer lo = floor((target - radius) * Rational(den));
    Integer hi = ceil((target + radius) * Rational(den));
    for (Integer num = lo; num <= hi; ++num) {
      ++w.scanned_candidates;
      if (num * num == 2 * Integer(den) * Integer(den)) ++w.rational_roots_found;
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// Increment domination.

/**
 * Given increasing x, y with x_{n+1} − x_n ≤ y_{n+1} − y_n and a Cauchy
 * modulus for y, the same modulus works for x: for N(ε) ≤ n ≤ m,
 * x_m − x_n ≤ y_m − y_n ≤ ε. Checked on the given stages for each ε.
 */
inline CheckReport check_increment_domination(const std::vector<Rational>& xs, const std::vector<Rational>& ys,
                                              const Modulus& modulus_y, const std::vector<Rational>& epsilons) {
  if (xs.size() != ys.size()) throw std::invalid_argument("stage lists differ in length");
  CheckReport report;
  for (std::size_t n = 0; n + 1 < xs.size(); ++n) {
    auto wit = [&] { return "stage " + std::to_string(n + 1); };
    report.record("x_increasing", xs[n] <= xs[n + 1], wit);
    report.record("increments_dominated", xs[n + 1] - xs[n] <= ys[n + 1] - ys[n], wit);
  }
  for (const auto& eps : epsilons) {
    std::size_t N = std::max<std::size_t>(1, modulus_y(eps));
    bool y_ok = true, x_ok = true;
    for (std::size_t n = N; n <= ys.size(); ++n)
      for (std::size_t m = n; m <= ys.size(); ++m) {
        y_ok = y_ok && abs(ys[m - 1] - ys[n - 1]) <= eps;
        x_ok = x_ok && abs(xs[m - 1] - xs[n - 1]) <= eps;
      }
    auto wit = [&] { return "eps=" + eps.str() + " N=" + std::to_string(N); };
    report.record("y_modulus_valid", y_ok, wit);
    report.record("x_inherits_modulus", x_ok, wit);
  }
  return report;
}

}  // namespace lval
