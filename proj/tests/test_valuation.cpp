#include <gtest/gtest.h>

#include <bit>

#include "lval/instances.hpp"
#include "lval/valuation.hpp"
#include "oracles.hpp"

using namespace lval;

namespace {

IntervalSet closed(long a, long b) { return IntervalSet::make({Interval::closed(a, b)}); }

oracle::RawSet raw(const IntervalSet& s) {
  oracle::RawSet out;
  for (const auto& p : s.pieces()) out.push_back({p.lo, p.lo_closed, p.hi, p.hi_closed});
  return out;
}

Valuation<FiniteLattice> table(const std::string& name, const FiniteLattice& l, std::vector<long> vals) {
  std::vector<GroupElem> g;
  for (long v : vals) g.emplace_back(Rational(v));
  return tabulated_valuation(name, l, g);
}

Valuation<SubsetLattice> squared_count() {
  return Valuation<SubsetLattice>("count^2", SubsetLattice{}, [](std::uint32_t a) {
    long c = std::popcount(a);
    return GroupElem(Rational(c * c));
  });
}

}  // namespace

TEST(CheckValuation, CountingMeasurePasses) {
  auto r = check_valuation(counting_valuation(), subset_sampler(), 1000, 7);
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
  EXPECT_EQ(r.at("modularity").pass, 1000u);
}

TEST(CheckValuation, TotientOnDivisorsPasses) {
  auto r = check_valuation(totient_valuation(), divisor_sampler(500), 1000, 7);
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

TEST(CheckValuation, SquaredCountFailsModularityWithWitness) {
  auto r = check_valuation(squared_count(), subset_sampler(), 1000, 7);
  EXPECT_FALSE(r.passed());
  EXPECT_GT(r.at("modularity").fail, 0u);
  ASSERT_TRUE(r.at("modularity").counterexample.has_value());
  EXPECT_NE(r.at("modularity").counterexample->find("a="), std::string::npos);
}

TEST(CheckValuation, NonMonotoneMapFailsMonotonicity) {
  Valuation<SubsetLattice> neg("-count", SubsetLattice{},
                               [](std::uint32_t a) { return GroupElem(Rational(-std::popcount(a))); });
  auto r = check_valuation(neg, subset_sampler(), 500, 7);
  EXPECT_EQ(r.at("modularity").fail, 0u);
  EXPECT_GT(r.at("monotonicity").fail, 0u);
}

TEST(CheckValuation, MissingSamplerRejected) {
  EXPECT_THROW(check_valuation(counting_valuation(), Sampler<std::uint32_t>{}, 10, 1), std::invalid_argument);
}

TEST(Distance, IntervalExampleMatchesSymmetricDifference) {
  auto phi = mu_S_valuation();
  IntervalSet a = closed(0, 2), b = closed(1, 3);
  EXPECT_EQ(dist(phi, a, b), GroupElem(Rational(2)));
  EXPECT_EQ(oracle::measure(raw(a ^ b)), Rational(2));
}

TEST(Distance, SymmetricDifferenceOracleOnSamples) {
  auto phi = mu_S_valuation();
  auto s = interval_set_sampler();
  Rng rng(21);
  for (int i = 0; i < 500; ++i) {
    auto a = s(rng), b = s(rng);
    // μ(A⊖B) computed by sweeping the raw union of both difference halves.
    oracle::RawSet ra = raw(a), rb = raw(b);
    std::set<Rational> ends;
    for (const auto& iv : ra) ends.insert({iv.lo, iv.hi});
    for (const auto& iv : rb) ends.insert({iv.lo, iv.hi});
    std::vector<Rational> g(ends.begin(), ends.end());
    Rational expect = 0;
    for (std::size_t k = 0; k + 1 < g.size(); ++k) {
      Rational mid = (g[k] + g[k + 1]) / 2;
      if (oracle::member(ra, mid) != oracle::member(rb, mid)) expect += g[k + 1] - g[k];
    }
    EXPECT_EQ(dist(phi, a, b).as_rational(), expect);
  }
}

TEST(Distance, ZeroOnDiagonal) {
  auto phi = phi_S_valuation();
  auto s = step_fn_sampler();
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    auto f = s(rng);
    EXPECT_TRUE(is_zero(dist(phi, f, f)));
  }
}

TEST(Distance, StepFunctionsGiveL1Norm) {
  auto phi = phi_S_valuation();
  auto s = step_fn_sampler();
  Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    auto f = s(rng), g = s(rng);
    EXPECT_EQ(dist(phi, f, g).as_rational(), phi_S(step_abs(f - g)));
  }
}

TEST(ApproxEqual, Examples) {
  auto mu = mu_S_valuation();
  IntervalSet with_point = IntervalSet::make({Interval::closed(0, 1), Interval::point(2)});
  EXPECT_TRUE(approx_equal(mu, closed(0, 1), with_point));
  EXPECT_FALSE(approx_equal(mu, closed(0, 1), closed(0, 2)));

  auto phi = phi_S_valuation();
  StepFn f = step_make({{Interval::closed(0, 3), 2}});
  StepFn g = f + step_make({{Interval::point(5), 1}});
  EXPECT_FALSE(f == g);
  EXPECT_TRUE(approx_equal(phi, f, g));
}

TEST(Quotient, ConstantZeroOnM3IsOnePoint) {
  auto q = quotient(table("zero", m3_lattice(), {0, 0, 0, 0, 0}));
  EXPECT_EQ(q.lattice.size(), 1u);
  EXPECT_EQ(q.members[0].size(), 5u);
}

TEST(Quotient, IdentityOnChainIsIsomorphic) {
  auto l = chain_lattice(5);
  auto q = quotient(table("id", l, {0, 1, 2, 3, 4}));
  ASSERT_EQ(q.lattice.size(), 5u);
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = 0; b < 5; ++b) EXPECT_EQ(q.lattice.leq(q.class_of[a], q.class_of[b]), l.leq(a, b));
}

TEST(Quotient, TwoBlockValuationGivesTwoChain) {
  auto q = quotient(table("blocks", chain_lattice(4), {0, 0, 1, 1}));
  ASSERT_EQ(q.lattice.size(), 2u);
  EXPECT_EQ(q.class_of, (std::vector<std::size_t>{0, 0, 1, 1}));
  EXPECT_TRUE(q.lattice.leq(0, 1));
  EXPECT_EQ(q.values[1], GroupElem(Rational(1)));
}

TEST(Quotient, NonValuationRaisesContractViolation) {
  // On M3, a ≈ b ≈ 0 but not c; then (a∨c) and (0∨c) land in different classes.
  EXPECT_THROW(quotient(table("bad", m3_lattice(), {0, 0, 0, 1, 1})), contract_violation);
}

TEST(Quotient, OutputIsHausdorffAndAValuation) {
  auto l = powerset_lattice(3);
  std::vector<long> weights{0, 2, 0};
  std::vector<long> vals;
  for (std::size_t m = 0; m < l.size(); ++m) {
    long v = 0;
    for (int b = 0; b < 3; ++b)
      if (m >> b & 1) v += weights[b];
    vals.push_back(v);
  }
  auto q = quotient(table("w", l, vals));
  EXPECT_EQ(q.lattice.size(), 2u);
  auto psi = q.valuation("w/~");
  EXPECT_TRUE(check_valuation_exhaustive(psi).passed());
  for (std::size_t x = 0; x < q.lattice.size(); ++x)
    for (std::size_t y = 0; y < q.lattice.size(); ++y)
      if (is_zero(dist(psi, x, y))) {
        EXPECT_EQ(x, y);
      }
}

TEST(Transforms, OppositeOfMuIsAValuation) {
  auto op = opposite_valuation(mu_S_valuation());
  EXPECT_TRUE(check_valuation(op, interval_set_sampler(), 300, 3).passed());
  EXPECT_EQ(op(closed(0, 2)).kind(), GroupKind::opposite);
}

TEST(Transforms, ProductOfCountingAndTotient) {
  auto p = product_valuation(counting_valuation(), totient_valuation());
  auto cs = subset_sampler();
  auto ds = divisor_sampler(500);
  Sampler<std::pair<std::uint32_t, std::uint64_t>> s = [cs, ds](Rng& rng) {
    auto a = cs(rng);
    return std::make_pair(a, ds(rng));
  };
  auto r = check_valuation(p, s, 500, 5);
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

TEST(Transforms, NegationIntoOppositeGroupIsModular) {
  auto phi = mu_S_valuation();
  auto composed = compose_valuation<IntervalSetLattice, IntervalSetLattice>(
      "neg mu", [](const GroupElem& g) { return GroupElem::opposite(neg(g)); }, phi, IntervalSetLattice{},
      [](const IntervalSet& a) { return a; });
  auto r = check_valuation(composed, interval_set_sampler(), 500, 9);
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

TEST(Transforms, ComposeWithLatticeMapThroughSubsets) {
  // f: subsets of {1..20} → interval sets, A ↦ ⋃_{k∈A} [k, k+1); a lattice
  // homomorphism, so μ∘f is the counting measure.
  auto f = [](std::uint32_t a) {
    std::vector<Interval> raw;
    for (long k = 0; k < 20; ++k)
      if (a >> k & 1u) raw.push_back(Interval::closed_open(k, k + 1));
    return IntervalSet::make(raw);
  };
  auto composed = compose_valuation<SubsetLattice, IntervalSetLattice>(
      "mu o f", [](const GroupElem& g) { return g; }, mu_S_valuation(), SubsetLattice{}, f);
  Rng rng(1);
  auto s = subset_sampler();
  for (int i = 0; i < 200; ++i) {
    auto a = s(rng);
    EXPECT_EQ(composed(a), GroupElem(Rational(std::popcount(a))));
  }
  EXPECT_TRUE(check_valuation(composed, s, 300, 2).passed());
}

TEST(PseudometricLaws, MuSHoldsExactly) {
  auto r = check_pseudometric(mu_S_valuation(), interval_set_sampler(), 1000, 7);
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
  for (auto p : {"triangle", "contraction", "joint_contraction", "modular_map_identity"}) EXPECT_EQ(r.at(p).pass, 1000u);
}

TEST(PseudometricLaws, PhiSHoldsExactly) {
  auto r = check_pseudometric(phi_S_valuation(), step_fn_sampler(), 1000, 7);
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

TEST(PseudometricLaws, GF2DimensionHolds) {
  auto r = check_pseudometric(dimension_valuation(), gf2_sampler(), 300, 7);
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

TEST(Congruence, NullPerturbationsOnIntervalSets) {
  auto r = check_congruence<IntervalSetLattice>(mu_S_valuation(), interval_set_sampler(), perturb_null_iset, 1000, 7);
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

TEST(Congruence, NullPerturbationsOnStepFunctions) {
  auto r = check_congruence<StepFnLattice>(phi_S_valuation(), step_fn_sampler(), perturb_null_step, 1000, 7);
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

TEST(Congruence, NonNullPerturbationIsCaught) {
  std::function<IntervalSet(const IntervalSet&, Rng&)> grow = [](const IntervalSet& a, Rng&) {
    return a | closed(100, 101);
  };
  auto r = check_congruence<IntervalSetLattice>(mu_S_valuation(), interval_set_sampler(), grow, 50, 7);
  EXPECT_GT(r.at("perturbation_equivalent").fail, 0u);
}

TEST(ReportJson, ShapeIsPassFailCounterexample) {
  auto r = check_valuation(squared_count(), subset_sampler(), 50, 7);
  auto j = r.to_json();
  ASSERT_TRUE(j.contains("modularity"));
  EXPECT_TRUE(j["modularity"].contains("pass"));
  EXPECT_TRUE(j["modularity"]["counterexample"].is_string());
  EXPECT_EQ(j["modularity"]["pass"].get<std::size_t>() + j["modularity"]["fail"].get<std::size_t>(), 50u);
}
