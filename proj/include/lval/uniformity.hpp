#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lval/check_report.hpp"
#include "lval/errors.hpp"
#include "lval/group.hpp"
#include "lval/interval_set.hpp"
#include "lval/random.hpp"
#include "lval/sequences.hpp"
#include "lval/valuation.hpp"

namespace lval {

/// s εᵢ t  ⟺  s ≤ t ≤ s + 2^{−i}.
inline bool dyadic_holds(std::size_t i, const Rational& s, const Rational& t) {
  return s <= t && t - s <= Rational::pow2(-static_cast<long>(i));
}

/**
 * A countable family {εᵢ} of relations on an ordered group, indexed by
 * i ≥ 1, with the maps (i, j) ↦ εᵢ∧εⱼ and i ↦ ε̇ᵢ of the definition.
 */
struct FittingUniformity {
  std::string name;
  std::function<bool(std::size_t, const GroupElem&, const GroupElem&)> holds;
  std::function<std::size_t(std::size_t, std::size_t)> meet_index;
  std::function<std::size_t(std::size_t)> half_index;
};

inline FittingUniformity dyadic_uniformity() {
  return {"dyadic",
          [](std::size_t i, const GroupElem& s, const GroupElem& t) {
            return dyadic_holds(i, s.as_rational(), t.as_rational());
          },
          [](std::size_t i, std::size_t j) { return std::max(i, j); },
          [](std::size_t i) { return i + 1; }};
}

/// A decreasing sequence with known infimum and, for each index i, a stage
/// after which the tail stays εᵢ-close; feeds the limit properties (vi), (vii).
struct ModulatedSequence {
  std::vector<GroupElem> stages;  // s₁ ≥ s₂ ≥ … ≥ s_depth
  GroupElem infimum;
  std::function<std::size_t(std::size_t)> stage_for_index;
};

namespace detail {

/// r, s, t clustered within a few multiples of 2^{−i} of each other, so the
/// implications under test are rarely vacuous. Offsets land exactly on
/// dyadic boundaries a good share of the time.
inline std::array<Rational, 3> sample_close_triple(Rng& rng, std::size_t i) {
  Rational r = random_rational(rng, 40, 6);
  auto offset = [&] {
    long j = static_cast<long>(i) + uniform_int(rng, -1, 1);
    return Rational(Integer(uniform_int(rng, 0, 4)), Integer(4)) * Rational::pow2(-j);
  };
  Rational s = r + offset();
  Rational t = s + offset();
  if (coin(rng, 3)) std::swap(r, t);
  return {r, s, t};
}

}  // namespace detail

/**
 * Properties (i)–(v) and (viii) of a fitting uniformity and (ix) of its
 * corollaries on sampled indices and rational triples, plus (vi) and (vii)
 * on the supplied modulus-carrying sequences.
 */
inline CheckReport uniformity_check(const FittingUniformity& u, std::size_t samples, std::uint64_t seed,
                                    std::size_t max_index = 12,
                                    const std::vector<ModulatedSequence>& limit_sequences = {}) {
  Rng rng(seed);
  CheckReport report;
  auto h = [&](std::size_t i, const Rational& s, const Rational& t) { return u.holds(i, GroupElem(s), GroupElem(t)); };
  for (std::size_t k = 0; k < samples; ++k) {
    auto i = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(max_index)));
    auto j = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(max_index)));
    auto [r, s, t] = detail::sample_close_triple(rng, i);
    auto wit = [&, r = r, s = s, t = t] {
      return "i=" + std::to_string(i) + " j=" + std::to_string(j) + " r=" + r.str() + " s=" + s.str() + " t=" + t.str();
    };

    report.record("i_reflexive", h(i, s, s), wit);

    std::size_t ij = u.meet_index(i, j);
    report.record("ii_meet", !h(ij, s, t) || (h(i, s, t) && h(j, s, t)), wit);

    std::size_t half = u.half_index(i);
    report.record("iii_half", !(h(half, r, s) && h(half, s, t)) || h(i, r, t), wit);

    std::array<Rational, 3> sorted{r, s, t};
    std::sort(sorted.begin(), sorted.end());
    report.record("iv_order", !h(i, sorted[0], sorted[2]) || (h(i, sorted[0], sorted[1]) && h(i, sorted[1], sorted[2])),
                  wit);

    if (sorted[0] < sorted[2]) {
      bool separated = false;
      for (std::size_t e = 1; e <= 64 && !separated; ++e) separated = !h(e, sorted[0], sorted[2]);
      report.record("v_separation", separated, wit);
    }

    report.record("viii_translation", !h(i, s, t) || h(i, r + s, r + t), wit);
    report.record("ix_negation", !h(i, s, t) || h(i, -t, -s), wit);
  }

  report.declare("vi_inf_conv");
  report.declare("vii_bound_inf");
  for (std::size_t q = 0; q < limit_sequences.size(); ++q) {
    const auto& seq = limit_sequences[q];
    const std::size_t depth = seq.stages.size();
    for (std::size_t i = 1; i <= max_index; ++i) {
      std::size_t N = seq.stage_for_index(i);
      if (N < 1 || N > depth) continue;
      auto wit = [&] { return "sequence " + std::to_string(q) + " i=" + std::to_string(i) + " N=" + std::to_string(N); };
      report.record("vi_inf_conv", u.holds(i, seq.infimum, seq.stages[N - 1]), wit);
      bool tail = true;
      for (std::size_t n = N; n <= depth; ++n) tail = tail && u.holds(i, seq.stages[n - 1], seq.stages[N - 1]);
      report.record("vii_bound_inf", tail, wit);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Lower-dense sublattices and the constructive approximation.

/// Witnesses lower density of K: for a and i, some ℓ ∈ K with ℓ ≤ a and
/// φ(ℓ) εᵢ φ(a).
template <Lattice L>
struct DenseOracle {
  std::string name;
  std::function<typename L::element_type(const typename L::element_type&, std::size_t)> witness;
  std::function<bool(const typename L::element_type&)> in_K;
};

inline bool is_dyadic(const Rational& x) {
  Integer d = x.denominator();
  return (d & (d - 1)) == 0;
}

/**
 * K = interval sets with dyadic endpoints. Each piece is shrunk to the grid
 * 2^{−j}ℤ with j = i + ⌈log₂(2m)⌉ for m pieces, so the lost measure is
 * below 2m·2^{−j} ≤ 2^{−i}. An endpoint already on the grid keeps its kind;
 * a moved endpoint becomes closed.
 */
inline DenseOracle<IntervalSetLattice> dyadic_endpoint_oracle() {
  DenseOracle<IntervalSetLattice> o;
  o.name = "dyadic-endpoints";
  o.witness = [](const IntervalSet& a, std::size_t i) {
    const std::size_t m = std::max<std::size_t>(1, a.pieces().size());
    std::size_t extra = 0;
    while ((std::size_t{1} << extra) < 2 * m) ++extra;
    const long j = static_cast<long>(i + extra);
    const Rational grid = Rational::pow2(-j);
    std::vector<Interval> out;
    for (const auto& p : a.pieces()) {
      Interval q = p;
      Rational lo = Rational(ceil(p.lo / grid)) * grid;
      Rational hi = Rational(floor(p.hi / grid)) * grid;
      if (lo != p.lo) q.lo_closed = true;
      if (hi != p.hi) q.hi_closed = true;
      q.lo = lo;
      q.hi = hi;
      if (q.lo <= q.hi) out.push_back(q);
    }
    return IntervalSet::make(out);
  };
  o.in_K = [](const IntervalSet& a) {
    for (const auto& p : a.pieces())
      if (!is_dyadic(p.lo) || !is_dyadic(p.hi)) return false;
    return true;
  };
  return o;
}

struct DenseStage {
  std::size_t n;
  Rational phi_a;
  Rational phi_atilde;
  Rational bound;  // Σ_{k≤n} 2^{−ζₖ}
  bool within_bound;
};

template <Lattice L>
struct DenseApproximation {
  MonoSeq<L> approx;
  std::vector<DenseStage> stages;
  CheckReport report;
};

/**
 * The construction behind the density lemma: pull ℓₙ ∈ K from the oracle at
 * tolerance index ζₙ = eps_index + n + 2 and output ãₙ = ℓ₁∧⋯∧ℓₙ. Telescoping
 * gives φ(aₙ) − φ(ãₙ) ≤ Σ_{k≤n} 2^{−ζₖ} < 2^{−(eps_index+1)}, verified exactly
 * at every stage up to depth. The output modulus is
 * ε ↦ max(i, N_a(ε/2)) with 2^{−(eps_index+i)} ≤ ε/2.
 */
template <Lattice L>
DenseApproximation<L> dense_approximate(const Valuation<L>& phi, const DenseOracle<L>& oracle, const MonoSeq<L>& seq,
                                        std::size_t eps_index, std::size_t depth) {
  if (seq.direction() != Direction::decreasing) throw std::invalid_argument("dense approximation needs a decreasing sequence");
  const L& l = phi.lattice();
  auto zeta = [eps_index](std::size_t k) { return eps_index + k + 2; };

  auto pull = [seq, oracle, phi, zeta](std::size_t k) {
    const auto a = seq.at(k);
    auto ell = oracle.witness(a, zeta(k));
    const L& lat = phi.lattice();
    if (!lat.leq(ell, a))
      throw contract_violation("oracle " + oracle.name + " returned an element not below a_" + std::to_string(k) + ": " +
                               lat.describe(ell));
    if (oracle.in_K && !oracle.in_K(ell))
      throw contract_violation("oracle " + oracle.name + " returned an element outside K at stage " + std::to_string(k));
    if (!dyadic_holds(zeta(k), phi(ell).as_rational(), phi(a).as_rational()))
      throw contract_violation("oracle " + oracle.name + " missed tolerance 2^-" + std::to_string(zeta(k)) +
                               " at stage " + std::to_string(k));
    return ell;
  };
  auto producer = [pull, l](std::size_t n) {
    auto acc = pull(1);
    for (std::size_t k = 2; k <= n; ++k) acc = l.meet(acc, pull(k));
    return acc;
  };
  auto modulus = [seq, eps_index](const Rational& eps) {
    std::size_t i = 1;
    while (Rational::pow2(-static_cast<long>(eps_index + i)) > eps / 2) ++i;
    return std::max(i, seq.stage_for(eps / 2));
  };

  DenseApproximation<L> out{MonoSeq<L>::make(Direction::decreasing, l, producer, modulus, phi.name(), 0), {}, {}};
  const Rational ceiling = Rational::pow2(-static_cast<long>(eps_index + 1));
  Rational bound = 0;
  std::optional<typename L::element_type> acc, prev;
  for (std::size_t n = 1; n <= depth; ++n) {
    const auto a = seq.at(n);
    const auto ell = pull(n);
    acc = acc ? l.meet(*acc, ell) : ell;
    bound += Rational::pow2(-static_cast<long>(zeta(n)));
    Rational pa = phi(a).as_rational(), pt = phi(*acc).as_rational();
    bool within = pt <= pa && pa - pt <= bound;
    out.stages.push_back({n, pa, pt, bound, within});
    auto wit = [&] { return "stage " + std::to_string(n) + " a=" + l.describe(a) + " atilde=" + l.describe(*acc); };
    out.report.record("below_input", l.leq(*acc, a), wit);
    out.report.record("decreasing", !prev || l.leq(*acc, *prev), wit);
    out.report.record("telescoped_bound", within, wit);
    out.report.record("bound_below_eps", bound < ceiling, wit);
    if (oracle.in_K) out.report.record("in_K", oracle.in_K(*acc), wit);
    prev = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weak φ-convergence.

/// For each i with rate(i) ≤ depth: 0 εᵢ d(aₙ, target) for rate(i) ≤ n ≤ depth.
template <Lattice L>
CheckReport weak_conv_check(const Valuation<L>& phi, const std::function<typename L::element_type(std::size_t)>& seq,
                            const typename L::element_type& target, const std::function<std::size_t(std::size_t)>& rate,
                            std::size_t depth, std::size_t max_index = 64) {
  CheckReport report;
  report.declare("weak_convergence");
  for (std::size_t i = 1; i <= max_index; ++i) {
    std::size_t start = std::max<std::size_t>(1, rate(i));
    if (start > depth) break;
    for (std::size_t n = start; n <= depth; ++n) {
      Rational d = dist(phi, seq(n), target).as_rational();
      report.record("weak_convergence", dyadic_holds(i, Rational(0), d), [&] {
        return "i=" + std::to_string(i) + " n=" + std::to_string(n) + " d=" + d.str() + " > 2^-" + std::to_string(i);
      });
    }
  }
  return report;
}

struct Subsequence {
  std::vector<std::size_t> indices;       // j₁ < j₂ < …
  std::vector<Rational> distances;        // d(target, a_{jₖ})
  std::vector<Rational> partial_sums;
  std::vector<Rational> majorant;         // Σ_{k'≤k} 2^{−(k'+1)}
  CheckReport report;
};

/// jₖ = rate(k+1), bumped to j_{k−1}+1 when the rate stalls, so that
/// d(target, a_{jₖ}) ≤ 2^{−(k+1)} and the partial sums stay below 1/2.
template <Lattice L>
Subsequence extract_subsequence(const Valuation<L>& phi, const std::function<typename L::element_type(std::size_t)>& seq,
                                const typename L::element_type& target,
                                const std::function<std::size_t(std::size_t)>& rate, std::size_t terms) {
  Subsequence out;
  Rational sum = 0, major = 0;
  for (std::size_t k = 1; k <= terms; ++k) {
    std::size_t j = std::max<std::size_t>(1, rate(k + 1));
    if (!out.indices.empty() && j <= out.indices.back()) j = out.indices.back() + 1;
    Rational d = dist(phi, target, seq(j)).as_rational();
    sum += d;
    major += Rational::pow2(-static_cast<long>(k + 1));
    out.indices.push_back(j);
    out.distances.push_back(d);
    out.partial_sums.push_back(sum);
    out.majorant.push_back(major);
    auto wit = [&] { return "k=" + std::to_string(k) + " j=" + std::to_string(j) + " d=" + d.str(); };
    out.report.record("term_bounded", d <= Rational::pow2(-static_cast<long>(k + 1)), wit);
    out.report.record("sum_below_majorant", sum <= major, wit);
    out.report.record("sum_at_most_half", sum <= Rational(1, 2), wit);
    out.report.record("strictly_increasing", out.indices.size() < 2 || out.indices[k - 2] < j, wit);
  }
  return out;
}

}  // namespace lval
