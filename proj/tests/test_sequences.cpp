#include <gtest/gtest.h>

#include "lval/instances.hpp"
#include "lval/sequences.hpp"

using namespace lval;

namespace {

using ISeq = MonoSeq<IntervalSetLattice>;

IntervalSet closed(const Rational& a, const Rational& b) { return IntervalSet::make({Interval::closed(a, b)}); }
Rational inv(std::size_t n) { return Rational(1) / Rational(n); }

ISeq decreasing(std::function<IntervalSet(std::size_t)> p, Modulus m = inverse_modulus) {
  return ISeq::make(Direction::decreasing, IntervalSetLattice{}, std::move(p), std::move(m), "mu_S", 30);
}

Modulus constant_modulus() {
  return [](const Rational&) { return std::size_t{1}; };
}

PiElem<IntervalSetLattice> shrinking() {
  return PiElem(decreasing([](std::size_t n) { return closed(0, 1 + inv(n)); }));
}

}  // namespace

TEST(SeqMake, NestedIntervalsAccepted) {
  auto s = shrinking().seq;
  EXPECT_EQ(s.at(4), closed(0, Rational(5, 4)));
  EXPECT_EQ(s.stage_for(Rational(1, 100)), 100u);
  EXPECT_THROW(s.at(0), std::out_of_range);
}

TEST(SeqMake, ConstantSequenceWithUnitModulus) {
  auto s = decreasing([](std::size_t) { return closed(0, 1); }, constant_modulus());
  EXPECT_EQ(s.stage_for(Rational(1, 1000000)), 1u);
}

TEST(SeqMake, NonMonotoneRejectedWithStage) {
  try {
    decreasing([](std::size_t n) { return n < 5 ? closed(0, 1) : closed(0, 2); });
    FAIL() << "expected monotonicity_violation";
  } catch (const monotonicity_violation& e) {
    EXPECT_EQ(e.stage(), 5u);
  }
}

TEST(SeqMake, ModulusIsMandatory) {
  EXPECT_THROW(ISeq::make(Direction::decreasing, IntervalSetLattice{}, [](std::size_t) { return IntervalSet{}; },
                          Modulus{}, "mu_S", 3),
               std::invalid_argument);
}

TEST(PiValue, Examples) {
  auto phi = mu_S_valuation();
  Rational v = pi_value(shrinking(), phi, Rational(1, 100)).as_rational();
  EXPECT_GE(v, Rational(1));
  EXPECT_LE(v, Rational(101, 100));

  PiElem constant(decreasing([](std::size_t) { return closed(0, 1); }, constant_modulus()));
  EXPECT_EQ(pi_value(constant, phi, Rational(1, 7)), GroupElem(Rational(1)));

  PiElem two_piece(decreasing(
      [](std::size_t n) { return IntervalSet::make({Interval::closed(0, 1), Interval::closed(2, 2 + inv(n))}); }));
  Rational w = pi_value(two_piece, phi, Rational(1, 1000)).as_rational();
  EXPECT_LE(abs(w - 1), Rational(1, 1000));
}

TEST(PiValue, ValuationMismatchIsShapeError) {
  auto phi = mu_S_valuation();
  Valuation<IntervalSetLattice> other("other", IntervalSetLattice{}, [](const IntervalSet&) { return GroupElem(Rational(0)); });
  EXPECT_THROW(pi_value(shrinking(), other, Rational(1, 10)), shape_error);
  EXPECT_THROW(pi_combine(LatticeOp::meet, shrinking(), shrinking(), other), shape_error);
  (void)phi;
}

TEST(PiValue, RespectsModulusAcrossTolerances) {
  auto phi = mu_S_valuation();
  auto x = shrinking();
  for (long a = 1; a <= 200; a += 7)
    for (long b = a; b <= 400; b += 13) {
      Rational eps(1, a), eps2(1, b);
      Rational d = abs(pi_value(x, phi, eps).as_rational() - pi_value(x, phi, eps2).as_rational());
      EXPECT_LE(d, eps + eps2);
    }
}

TEST(PiCombine, MeetWithConstant) {
  auto phi = mu_S_valuation();
  PiElem c(decreasing([](std::size_t) { return closed(Rational(1, 2), 2); }, constant_modulus()));
  auto m = pi_combine(LatticeOp::meet, shrinking(), c, phi);
  for (std::size_t n = 1; n <= 20; ++n) EXPECT_EQ(m.seq.at(n), closed(Rational(1, 2), 1 + inv(n)));
  Rational v = pi_value(m, phi, Rational(1, 100)).as_rational();
  EXPECT_LE(abs(v - Rational(1, 2)), Rational(1, 100));
}

TEST(PiCombine, MeetWithSelfIsIdentityStagewise) {
  auto phi = mu_S_valuation();
  auto x = shrinking();
  auto m = pi_combine(LatticeOp::meet, x, x, phi);
  for (std::size_t n = 1; n <= 20; ++n) EXPECT_EQ(m.seq.at(n), x.seq.at(n));
}

TEST(PiCombine, JoinOfShrinkingPair) {
  auto phi = mu_S_valuation();
  PiElem y(decreasing([](std::size_t n) { return closed(2 - inv(n), 3); }));
  auto j = pi_combine(LatticeOp::join, shrinking(), y, phi);
  EXPECT_EQ(j.seq.at(2), closed(0, 3));
  for (std::size_t n = 3; n <= 20; ++n) {
    EXPECT_EQ(j.seq.at(n), IntervalSet::make({Interval::closed(0, 1 + inv(n)), Interval::closed(2 - inv(n), 3)}));
    EXPECT_EQ(mu_S(j.seq.at(n)), 2 + 2 * inv(n));
  }
  Rational v = pi_value(j, phi, Rational(1, 50)).as_rational();
  EXPECT_LE(abs(v - 2), Rational(1, 50));
}

TEST(PiCombine, StagewiseModularityToFifty) {
  auto phi = mu_S_valuation();
  PiElem y(decreasing([](std::size_t n) { return closed(Rational(1, 2) - inv(n), Rational(3, 2) + inv(n * n)); },
                      [](const Rational& eps) { return inverse_modulus(eps / 2); }));
  auto x = shrinking();
  auto m = pi_combine(LatticeOp::meet, x, y, phi);
  auto j = pi_combine(LatticeOp::join, x, y, phi);
  for (std::size_t n = 1; n <= 50; ++n)
    EXPECT_EQ(add(phi(m.seq.at(n)), phi(j.seq.at(n))), add(phi(x.seq.at(n)), phi(y.seq.at(n)))) << n;
}

TEST(PiCombine, CombinedModulusIsHonest) {
  auto phi = mu_S_valuation();
  PiElem y(decreasing([](std::size_t n) { return closed(2 - inv(n), 3); }));
  auto j = pi_combine(LatticeOp::join, shrinking(), y, phi);
  for (long k = 1; k <= 100; ++k) {
    Rational eps(1, k);
    Rational v = phi(j.seq.at(j.seq.stage_for(eps))).as_rational();
    EXPECT_LE(v - 2, eps);
  }
}

TEST(PiLeq, ShrinkingBelowConstantIsProved) {
  PiElem y(decreasing([](std::size_t) { return closed(0, 2); }, constant_modulus()));
  LeqCertificate<IntervalSet> cert;
  cert.y_constant_from = 1;
  EXPECT_EQ(pi_leq_at_depth(shrinking(), y, 10, cert), Verdict::proved_at(1));
  EXPECT_EQ(pi_leq_at_depth(shrinking(), y, 10, cert).str(), "proved_at_stage(1)");
}

TEST(PiLeq, ConstantAboveShrinkingIsRefuted) {
  PiElem x(decreasing([](std::size_t) { return closed(0, 2); }, constant_modulus()));
  LeqCertificate<IntervalSet> cert;
  cert.x_lower_bound = closed(0, 2);
  EXPECT_EQ(pi_leq_at_depth(x, shrinking(), 10, cert), Verdict::refuted_at(2));
  cert.x_lower_bound = IntervalSet::make({Interval::point(Rational(3, 2))});
  EXPECT_EQ(pi_leq_at_depth(x, shrinking(), 10, cert), Verdict::refuted_at(3));
}

TEST(PiLeq, UncertifiedPairIsUnknown) {
  PiElem y(decreasing([](std::size_t n) { return closed(0, 1 + inv(2 * n)); }));
  EXPECT_EQ(pi_leq_at_depth(shrinking(), y, 10), Verdict::unknown_at(10));
  LeqCertificate<IntervalSet> cert;
  cert.stagewise = true;  // false here: x ⊇ y stage-wise
  EXPECT_EQ(pi_leq_at_depth(shrinking(), y, 10, cert).kind, Verdict::Kind::unknown);
  // Reversed, the stage-wise certificate holds; x_3 = [0, 4/3] first covers y_2.
  EXPECT_EQ(pi_leq_at_depth(y, shrinking(), 10, cert).kind, Verdict::Kind::proved);
}

TEST(PiLeq, FalseCertificateIsIgnored) {
  PiElem y(decreasing([](std::size_t n) { return closed(0, 1 + inv(n)); }));
  LeqCertificate<IntervalSet> cert;
  cert.y_constant_from = 1;  // not true of y
  EXPECT_EQ(pi_leq_at_depth(shrinking(), y, 10, cert).kind, Verdict::Kind::unknown);
}

TEST(LimitsFinite, Examples) {
  auto l = m3_lattice();
  std::size_t a = l.index_of("a"), b = l.index_of("b"), c = l.index_of("c");
  auto k = limits_finite(l, {}, {a});
  EXPECT_EQ(k.ulim, a);
  EXPECT_EQ(k.llim, a);
  EXPECT_TRUE(k.convergent);

  auto alt = limits_finite(l, {}, {a, b});
  EXPECT_EQ(l.label(alt.ulim), "1");
  EXPECT_EQ(l.label(alt.llim), "0");
  EXPECT_FALSE(alt.convergent);

  auto tail = limits_finite(l, {a, b, l.top(), l.bottom()}, {c});
  EXPECT_EQ(tail.ulim, c);
  EXPECT_EQ(tail.llim, c);
  EXPECT_TRUE(tail.convergent);

  EXPECT_THROW(limits_finite(l, {a}, {}), std::invalid_argument);
}

TEST(LimitsFinite, MatchesLongUnrolledWindow) {
  // Brute force: unroll 200 terms and take ⋀_{N≤100} ⋁_{N≤n≤200} (dually).
  auto l = powerset_lattice(3);
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::size_t> pre, cyc;
    for (auto n = uniform_int(rng, 0, 5); n > 0; --n) pre.push_back(uniform_int(rng, 0, 7));
    for (auto n = uniform_int(rng, 1, 4); n > 0; --n) cyc.push_back(uniform_int(rng, 0, 7));
    std::vector<std::size_t> seq = pre;
    while (seq.size() < 200) seq.insert(seq.end(), cyc.begin(), cyc.end());
    std::size_t ul = l.top(), ll = l.bottom();
    for (std::size_t N = 0; N < 100; ++N) {
      std::size_t sup = seq[N], inf = seq[N];
      for (std::size_t n = N; n < 200; ++n) {
        sup = l.join(sup, seq[n]);
        inf = l.meet(inf, seq[n]);
      }
      ul = l.meet(ul, sup);
      ll = l.join(ll, inf);
    }
    auto got = limits_finite(l, pre, cyc);
    EXPECT_EQ(got.ulim, ul);
    EXPECT_EQ(got.llim, ll);
  }
}

TEST(PhiLimits, ConstantSequence) {
  auto phi = phi_S_valuation();
  StepFn f = indicator(closed(0, 3), Rational(1, 2));
  for (std::size_t depth : {2u, 5u, 17u}) {
    auto lim = phi_limits_at_depth<StepFnLattice>(phi, [&](std::size_t) { return f; }, depth);
    EXPECT_EQ(lim.pulim, GroupElem(Rational(3, 2)));
    EXPECT_EQ(lim.pllim, GroupElem(Rational(3, 2)));
  }
}

TEST(PhiLimits, AlternatingIndicators) {
  auto phi = phi_S_valuation();
  auto seq = [](std::size_t n) { return n % 2 ? indicator(closed(0, 1)) : indicator(closed(1, 2)); };
  for (std::size_t depth = 3; depth <= 12; ++depth) {
    auto lim = phi_limits_at_depth<StepFnLattice>(phi, seq, depth);
    EXPECT_EQ(lim.pulim, GroupElem(Rational(2)));
    EXPECT_EQ(lim.pllim, GroupElem(Rational(0)));
  }
}

TEST(PhiLimits, DecayingMultiples) {
  auto phi = phi_S_valuation();
  auto seq = [](std::size_t n) { return indicator(closed(0, 1), inv(n)); };
  auto lim = phi_limits_at_depth<StepFnLattice>(phi, seq, 20);
  EXPECT_EQ(lim.pulim, GroupElem(Rational(1, 19)));
  ASSERT_EQ(lim.trace.size(), 19u);
  for (std::size_t i = 0; i < lim.trace.size(); ++i) EXPECT_EQ(lim.trace[i].sup, GroupElem(inv(i + 1)));
  EXPECT_TRUE(leq(lim.pllim, lim.pulim));
}

TEST(PhiLimits, LowerNeverExceedsUpper) {
  auto phi = phi_S_valuation();
  auto s = step_fn_sampler();
  Rng rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<StepFn> terms;
    for (int i = 0; i < 8; ++i) terms.push_back(s(rng));
    auto lim = phi_limits_at_depth<StepFnLattice>(phi, [&](std::size_t n) { return terms[n - 1]; }, 8);
    EXPECT_TRUE(leq(lim.pllim, lim.pulim));
  }
}

TEST(ConvergenceTheorems, FatouOnIncreasingIndicators) {
  auto phi = phi_S_valuation();
  auto seq = [](std::size_t n) { return indicator(IntervalSet::make({Interval::closed(0, 1 - inv(n))})); };
  StepFn limit = indicator(IntervalSet::make({Interval::closed_open(0, 1)}));
  const std::size_t depth = 40;
  auto r = convergence_theorem_check<StepFnLattice>(ConvergenceTheorem::fatou, phi, seq, std::nullopt, limit, depth,
                                                    inv(depth));
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
  auto tight = convergence_theorem_check<StepFnLattice>(ConvergenceTheorem::fatou, phi, seq, std::nullopt, limit, depth,
                                                        inv(depth * 2));
  EXPECT_FALSE(tight.passed());
}

TEST(ConvergenceTheorems, DominatedAlternatingSigns) {
  auto phi = phi_S_valuation();
  auto seq = [](std::size_t n) { return indicator(closed(0, 1), Rational(n % 2 ? -1 : 1) * inv(n)); };
  std::pair<StepFn, StepFn> bounds{indicator(closed(0, 1), -1), indicator(closed(0, 1))};
  auto r = convergence_theorem_check<StepFnLattice>(ConvergenceTheorem::dct, phi, seq, bounds, StepFn{}, 40,
                                                    Rational(1, 20));
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

TEST(ConvergenceTheorems, ConstantSequenceExact) {
  auto phi = phi_S_valuation();
  StepFn f = indicator(closed(0, 2), 3);
  auto r = convergence_theorem_check<StepFnLattice>(ConvergenceTheorem::dct, phi, [&](std::size_t) { return f; },
                                                    std::make_pair(f, f), f, 10, Rational(0));
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

TEST(ConvergenceTheorems, UnsupportedAndMissingBounds) {
  auto phi = phi_S_valuation();
  auto seq = [](std::size_t) { return StepFn{}; };
  EXPECT_THROW(convergence_theorem_check<StepFnLattice>(ConvergenceTheorem::fatou, phi, seq, std::nullopt, std::nullopt,
                                                        5, Rational(0)),
               unsupported_operation);
  EXPECT_THROW(convergence_theorem_check<StepFnLattice>(ConvergenceTheorem::dct, phi, seq, std::nullopt, StepFn{}, 5,
                                                        Rational(0)),
               std::invalid_argument);
}

TEST(Sqrt2Witness, DepthFive) {
  auto w = sqrt2_witness(5);
  ASSERT_EQ(w.stages.size(), 5u);
  EXPECT_LE(w.stages.back().gap, Rational(1, 1000));
  EXPECT_TRUE(w.q_strictly_increasing);
  EXPECT_TRUE(w.q_below_sqrt2);
  EXPECT_TRUE(w.gap_decreasing);
  for (const auto& s : w.stages) {
    EXPECT_EQ(s.mu_B, s.q - s.r);
    EXPECT_EQ(s.mu_AB, s.q);
    EXPECT_GT(s.r * s.r + 2 * s.r, Rational(1));  // r > √2 − 1
  }
}

TEST(Sqrt2Witness, ConvergentsOracle) {
  // pₖ/qₖ from the recurrence x ↦ 1 + 1/(1 + x) starting at 1.
  Rational x = 1;
  std::vector<Rational> conv{x};
  for (int k = 0; k < 20; ++k) conv.push_back(x = 1 + 1 / (1 + x));
  auto w = sqrt2_witness(10);
  for (std::size_t n = 1; n <= 10; ++n) {
    EXPECT_EQ(w.stages[n - 1].q, conv[2 * (n - 1)]);
    EXPECT_EQ(w.stages[n - 1].r, conv[2 * n - 1] - 1);
  }
}

TEST(Sqrt2Witness, DepthFortyHasNoRationalRoot) {
  auto w = sqrt2_witness(40);
  EXPECT_LE(w.stages.back().gap, Rational(Integer(1), Integer("10000000000")));
  EXPECT_EQ(w.rational_roots_found, 0u);
  EXPECT_GE(w.scanned_candidates, 10000u);
  EXPECT_TRUE(w.union_measure_is_q);
}

TEST(IncrementDomination, HalvedIncrementsInheritModulus) {
  std::vector<Rational> ys, xs;
  for (std::size_t n = 1; n <= 60; ++n) {
    ys.push_back(1 - inv(n));
    xs.push_back((1 - inv(n)) / 2);
  }
  std::vector<Rational> eps{Rational(1, 2), Rational(1, 10), Rational(1, 33)};
  auto r = check_increment_domination(xs, ys, inverse_modulus, eps);
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

TEST(IncrementDomination, LargerIncrementsAreCaught) {
  std::vector<Rational> ys, xs;
  for (std::size_t n = 1; n <= 60; ++n) {
    ys.push_back(1 - inv(n));
    xs.push_back(3 * (1 - inv(n)));
  }
  auto r = check_increment_domination(xs, ys, inverse_modulus, {Rational(1, 10)});
  EXPECT_GT(r.at("increments_dominated").fail, 0u);
  EXPECT_GT(r.at("x_inherits_modulus").fail, 0u);
  EXPECT_EQ(r.at("y_modulus_valid").fail, 0u);
}
