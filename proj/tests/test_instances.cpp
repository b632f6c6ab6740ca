#include <gtest/gtest.h>

#include "lval/instances.hpp"
#include "oracles.hpp"

using namespace lval;

namespace {

oracle::RawSet raw(const IntervalSet& s) {
  oracle::RawSet out;
  for (const auto& p : s.pieces()) out.push_back({p.lo, p.lo_closed, p.hi, p.hi_closed});
  return out;
}

oracle::RawInterval raw(const Interval& i) { return {i.lo, i.lo_closed, i.hi, i.hi_closed}; }

IntervalSet closed(Rational a, Rational b) { return IntervalSet::make({Interval::closed(a, b)}); }

/// Canonical-form invariants: sorted, disjoint, not mergeable, well-formed.
void expect_canonical(const IntervalSet& s) {
  const auto& p = s.pieces();
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_FALSE(p[i].empty()) << s.str();
    if (p[i].lo == p[i].hi) {
      EXPECT_TRUE(p[i].lo_closed && p[i].hi_closed) << s.str();
    }
    if (i + 1 < p.size()) {
      EXPECT_LE(p[i].hi, p[i + 1].lo) << s.str();
      if (p[i].hi == p[i + 1].lo) {
        EXPECT_FALSE(p[i].hi_closed || p[i + 1].lo_closed) << s.str();
      }
    }
  }
}

}  // namespace

// ---- interval sets --------------------------------------------------------

TEST(IntervalSetMake, MergesClosedWithAdjacentOpen) {
  auto s = IntervalSet::make({Interval::closed(0, 1), Interval::open(1, 2)});
  ASSERT_EQ(s.pieces().size(), 1u);
  EXPECT_EQ(s.pieces()[0].str(), "[0, 2)");
}

TEST(IntervalSetMake, OpenSingletonIsEmpty) {
  EXPECT_TRUE(IntervalSet::make({Interval::open(0, 0)}).empty());
  EXPECT_EQ(IntervalSet::make({Interval::open(0, 0)}).str(), "∅");
}

TEST(IntervalSetMake, OverlapMerge) {
  auto s = IntervalSet::make({Interval::closed(0, 1), Interval::closed(Rational(1, 2), 3)});
  EXPECT_EQ(s, closed(0, 3));
}

TEST(IntervalSetMake, RejectsReversedEndpoints) {
  EXPECT_THROW(IntervalSet::make({Interval::closed(2, 1)}), std::invalid_argument);
}

TEST(IntervalSetMake, OpenTouchingOpenStaysSplit) {
  auto s = IntervalSet::make({Interval::open(0, 1), Interval::open(1, 2)});
  EXPECT_EQ(s.pieces().size(), 2u);
  EXPECT_FALSE(s.contains(1));
}

TEST(IntervalSetOps, PaperExamples) {
  EXPECT_EQ(closed(0, 2) & closed(1, 3), closed(1, 2));
  auto diff = closed(0, 2) - IntervalSet::make({Interval::open(1, 2)});
  EXPECT_EQ(diff, IntervalSet::make({Interval::closed(0, 1), Interval::point(2)}));
  EXPECT_EQ(diff.str(), "[0, 1] ∪ {2}");
  auto sym = closed(0, 2) ^ closed(1, 3);
  EXPECT_EQ(sym, IntervalSet::make({Interval::closed_open(0, 1), Interval::open_closed(2, 3)}));
}

TEST(IntervalSetOps, AgreeWithProbeOracle) {
  auto sample = interval_set_sampler(4);
  Rng rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Interval> ra, rb;
    for (auto n = uniform_int(rng, 0, 4); n > 0; --n) ra.push_back(detail::sample_interval(rng));
    for (auto n = uniform_int(rng, 0, 4); n > 0; --n) rb.push_back(detail::sample_interval(rng));
    IntervalSet a = IntervalSet::make(ra), b = IntervalSet::make(rb);
    oracle::RawSet oa, ob;
    for (const auto& i : ra) oa.push_back(raw(i));
    for (const auto& i : rb) ob.push_back(raw(i));

    IntervalSet m = a & b, j = a | b, d = a - b, x = a ^ b;
    for (const auto& s : {a, b, m, j, d, x}) expect_canonical(s);
    for (const auto& p : oracle::probes({oa, ob, raw(m), raw(j), raw(d), raw(x)})) {
      bool ia = oracle::member(oa, p), ib = oracle::member(ob, p);
      ASSERT_EQ(a.contains(p), ia) << a.str() << " at " << p.str();
      ASSERT_EQ(m.contains(p), ia && ib) << p.str();
      ASSERT_EQ(j.contains(p), ia || ib) << p.str();
      ASSERT_EQ(d.contains(p), ia && !ib) << p.str();
      ASSERT_EQ(x.contains(p), ia != ib) << p.str();
    }
  }
  (void)sample;
}

TEST(MuS, Examples) {
  EXPECT_EQ(mu_S(IntervalSet::make({Interval::closed(0, 1), Interval::closed(2, Rational(7, 2))})), Rational(5, 2));
  EXPECT_EQ(mu_S(IntervalSet{}), Rational(0));
  EXPECT_EQ(mu_S(IntervalSet::make({Interval::point(2)})), Rational(0));
}

TEST(MuS, MatchesSweepOracleAndIsAdditive) {
  auto s = interval_set_sampler(4);
  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    auto a = s(rng), b = s(rng);
    EXPECT_EQ(mu_S(a), oracle::measure(raw(a)));
    auto bd = b - a;  // disjoint from a
    EXPECT_EQ(mu_S(a | bd), mu_S(a) + mu_S(bd));
  }
}

TEST(MuS, ModularOnThousandPairs) {
  auto r = check_valuation(mu_S_valuation(), interval_set_sampler(), 1000, 7);
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

// ---- step functions -------------------------------------------------------

TEST(StepMake, TwoPartExample) {
  StepFn f = step_make({{Interval::open(0, 1), 2}, {Interval::open(1, 2), 3}});
  EXPECT_EQ(f.breakpoints(), (std::vector<Rational>{0, 1, 2}));
  EXPECT_EQ(phi_S(f), Rational(5));
}

TEST(StepMake, ClosedIndicatorHasPointValues) {
  StepFn f = step_make({{Interval::closed(0, 1), 1}});
  EXPECT_EQ(f.breakpoints(), (std::vector<Rational>{0, 1}));
  EXPECT_EQ(f.point_values(), (std::vector<Rational>{1, 1}));
  EXPECT_EQ(phi_S(f), Rational(1));
}

TEST(StepMake, ZeroIsCanonicalEmpty) {
  EXPECT_TRUE(step_make({{Interval::closed(0, 5), 0}}).breakpoints().empty());
  EXPECT_TRUE(step_make({}).is_zero());
  EXPECT_EQ(phi_S(StepFn{}), Rational(0));
}

TEST(StepMake, ConflictingPointAssignmentsRejected) {
  EXPECT_THROW(step_make({}, {{1, 2}, {1, 3}}), std::invalid_argument);
  EXPECT_NO_THROW(step_make({}, {{1, 2}, {1, 2}}));
}

TEST(StepMake, AgreesWithPointwiseOracle) {
  Rng rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    oracle::RawStep o;
    std::vector<StepPart> parts;
    std::vector<PointAssignment> points;
    for (auto n = uniform_int(rng, 0, 4); n > 0; --n) {
      Interval iv = detail::sample_interval(rng);
      Rational c = random_rational(rng, 6, 3);
      parts.push_back({iv, c});
      o.parts.push_back({raw(iv), c});
    }
    if (coin(rng)) {
      Rational x = detail::sample_endpoint(rng), v = random_rational(rng, 6, 3);
      points.push_back({x, v});
      o.points.push_back({x, v});
    }
    StepFn f = step_make(parts, points);
    std::vector<oracle::RawSet> sets;
    for (const auto& [iv, c] : o.parts) sets.push_back({iv});
    for (const auto& [x, v] : o.points) sets.push_back({{x, true, x, true}});
    for (const auto& p : oracle::probes(sets)) ASSERT_EQ(f.at(p), o.at(p)) << p.str();
  }
}

TEST(StepCombine, Examples) {
  StepFn a = indicator(closed(0, 2)), b = indicator(closed(1, 3), 2);
  EXPECT_EQ(step_meet(a, b), indicator(closed(1, 2)));

  StepFn f = step_make({{Interval::open(0, 3), Rational(7, 2)}, {Interval::point(1), 1}});
  EXPECT_TRUE((f + scale(-1, f)).is_zero());

  StepFn g = step_abs(indicator(closed(0, 1)) - indicator(closed(1, 2)));
  EXPECT_EQ(g.breakpoints(), (std::vector<Rational>{0, 1, 2}));
  EXPECT_EQ(g.open_values(), (std::vector<Rational>{1, 1}));
  EXPECT_EQ(g.point_values(), (std::vector<Rational>{1, 0, 1}));
}

TEST(StepCombine, PointwiseOnProbes) {
  auto s = step_fn_sampler(4);
  Rng rng(31);
  for (int i = 0; i < 500; ++i) {
    StepFn f = s(rng), g = s(rng);
    Rational lambda = random_rational(rng, 5, 3);
    std::vector<Rational> pts;
    for (const auto& h : {f, g})
      for (const auto& x : h.breakpoints()) pts.insert(pts.end(), {x, x - Rational(1, 1000), x + Rational(1, 1000)});
    pts.push_back(Rational(0));
    StepFn m = step_meet(f, g), j = step_join(f, g), sum = f + g, diff = f - g, sc = scale(lambda, f), ab = step_abs(f);
    for (const auto& x : pts) {
      ASSERT_EQ(m.at(x), min(f.at(x), g.at(x)));
      ASSERT_EQ(j.at(x), max(f.at(x), g.at(x)));
      ASSERT_EQ(sum.at(x), f.at(x) + g.at(x));
      ASSERT_EQ(diff.at(x), f.at(x) - g.at(x));
      ASSERT_EQ(sc.at(x), lambda * f.at(x));
      ASSERT_EQ(ab.at(x), abs(f.at(x)));
    }
  }
}

TEST(PhiS, LinearPositiveAndModular) {
  auto s = step_fn_sampler();
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    StepFn f = s(rng), g = s(rng);
    Rational lambda = random_rational(rng, 5, 3);
    EXPECT_EQ(phi_S(f + g), phi_S(f) + phi_S(g));
    EXPECT_EQ(phi_S(scale(lambda, f)), lambda * phi_S(f));
    EXPECT_GE(phi_S(step_abs(f)), Rational(0));
  }
  auto r = check_valuation(phi_S_valuation(), step_fn_sampler(), 1000, 7);
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

// ---- totient --------------------------------------------------------------

TEST(Totient, Examples) {
  EXPECT_EQ(totient(12), 4u);
  EXPECT_EQ(totient(1), 1u);
  for (std::uint64_t p : {2, 3, 5, 7, 97, 499}) EXPECT_EQ(totient(p), p - 1);
  EXPECT_THROW(totient(0), std::invalid_argument);
}

TEST(Totient, MatchesCoprimeCount) {
  for (std::uint64_t n = 1; n <= 1000; ++n) ASSERT_EQ(totient(n), oracle::coprime_count(n)) << n;
}

TEST(Totient, MultiplicativeModularIdentityExhaustive) {
  std::vector<std::uint64_t> phi(501);
  for (std::uint64_t n = 1; n <= 500; ++n) phi[n] = oracle::coprime_count(n);
  for (std::uint64_t m = 1; m <= 500; ++m)
    for (std::uint64_t n = 1; n <= 500; ++n) {
      std::uint64_t g = std::gcd(m, n), l = m / g * n;
      ASSERT_EQ(totient(g) * totient(l), phi[m] * phi[n]) << m << "," << n;
    }
}

TEST(Totient, ValuationIntoDivisibilityGroup) {
  auto phi = totient_valuation();
  EXPECT_EQ(phi(12), GroupElem(DivPos::from_integer(4)));
  EXPECT_TRUE(check_valuation(phi, divisor_sampler(500), 1000, 7).passed());
}

TEST(DivLatticeOps, GcdLcmDivides) {
  DivLattice d;
  EXPECT_EQ(d.meet(12, 18), 6u);
  EXPECT_EQ(d.join(12, 18), 36u);
  EXPECT_TRUE(d.leq(3, 12));
  EXPECT_FALSE(d.contains(0));
}

// ---- counting -------------------------------------------------------------

TEST(Counting, ModularOnSubsetsOfTwenty) {
  auto r = check_valuation(counting_valuation(), subset_sampler(), 1000, 7);
  EXPECT_TRUE(r.passed());
}

// ---- GF(2) subspaces ------------------------------------------------------

TEST(GF2, Examples) {
  EXPECT_EQ(GF2Subspace::span_units(3, {1}).dim(), 1u);
  auto u = GF2Subspace::span_units(3, {1, 2}), w = GF2Subspace::span_units(3, {2, 3});
  EXPECT_EQ(u.meet(w), GF2Subspace::span_units(3, {2}));
  auto j = GF2Subspace::span_units(3, {1}).join(GF2Subspace::span_units(3, {2}));
  EXPECT_EQ(j, GF2Subspace::span_units(3, {1, 2}));
  EXPECT_EQ(j.dim(), 2u);
}

TEST(GF2, AmbientMismatchIsShapeError) {
  EXPECT_THROW(GF2Subspace::span_units(3, {1}).join(GF2Subspace::span_units(4, {1})), shape_error);
  EXPECT_THROW(GF2Subspace(25), std::invalid_argument);
}

TEST(GF2, MeetAndJoinAgreeWithEnumeration) {
  for (unsigned n : {3u, 6u, 10u, 12u}) {
    auto s = gf2_sampler(n, 5);
    Rng rng(n);
    for (int trial = 0; trial < (n <= 6 ? 300 : 60); ++trial) {
      GF2Subspace u = s(rng), w = s(rng);
      auto su = oracle::span(u.basis(), n), sw = oracle::span(w.basis(), n);
      std::set<std::uint32_t> inter, uni_gen;
      for (auto v : su)
        if (sw.count(v)) inter.insert(v);
      std::vector<std::uint32_t> both(u.basis());
      both.insert(both.end(), w.basis().begin(), w.basis().end());
      auto sum = oracle::span(both, n);
      GF2Subspace m = u.meet(w), j = u.join(w);
      EXPECT_EQ(oracle::span(m.basis(), n), inter);
      EXPECT_EQ(oracle::span(j.basis(), n), sum);
      EXPECT_EQ(std::size_t{1} << m.dim(), inter.size());
      EXPECT_EQ(std::size_t{1} << u.dim(), su.size());
      for (std::uint32_t v = 0; v < (1u << n) && n <= 10; ++v) ASSERT_EQ(u.contains_vector(v), su.count(v) == 1);
    }
  }
}

TEST(GF2, DimensionTheoremOnAmbientEight) {
  auto r = check_valuation(dimension_valuation(8), gf2_sampler(8), 1000, 7);
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

TEST(GF2, TwoDimensionalNonDistributivity) {
  GF2Subspace v1(2, {0b01}), v2(2, {0b10}), w(2, {0b11});
  GF2SubspaceLattice l{2};
  auto lhs = l.meet(w, l.join(v1, v2));
  auto rhs = l.join(l.meet(w, v1), l.meet(w, v2));
  EXPECT_EQ(lhs, w);
  EXPECT_EQ(rhs.dim(), 0u);
  EXPECT_FALSE(lhs == rhs);
}
