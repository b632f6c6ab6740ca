#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lval/check_report.hpp"
#include "lval/errors.hpp"
#include "lval/group.hpp"
#include "lval/lattice.hpp"
#include "lval/random.hpp"

namespace lval {

/// Draws a random element of some lattice. Instances ship one per domain,
/// with bounded complexity so exact arithmetic stays cheap.
template <class E>
using Sampler = std::function<E(Rng&)>;

/**
 * A map from a lattice into an ordered Abelian group.
 *
 * Construction trusts nothing: modularity and monotonicity are properties to
 * be checked with check_valuation, which lets tests build deliberately broken
 * maps as negative controls. The name identifies the valuation when
 * completion machinery needs to make sure two sequences were measured by the
 * same map.
 */
template <Lattice L>
class Valuation {
 public:
  using lattice_type = L;
  using element_type = typename L::element_type;
  using Eval = std::function<GroupElem(const element_type&)>;

  Valuation(std::string name, L lattice, Eval eval)
      : name_(std::move(name)), lattice_(std::move(lattice)), eval_(std::move(eval)) {}

  const std::string& name() const { return name_; }
  const L& lattice() const { return lattice_; }
  GroupElem operator()(const element_type& a) const { return eval_(a); }

 private:
  std::string name_;
  L lattice_;
  Eval eval_;
};

/// d(a, b) = φ(a∨b) − φ(a∧b).
template <Lattice L>
GroupElem dist(const Valuation<L>& phi, const typename L::element_type& a, const typename L::element_type& b) {
  require_member(phi.lattice(), a);
  require_member(phi.lattice(), b);
  const L& l = phi.lattice();
  return sub(phi(l.join(a, b)), phi(l.meet(a, b)));
}

/// a ≈ b iff d(a, b) is the group identity.
template <Lattice L>
bool approx_equal(const Valuation<L>& phi, const typename L::element_type& a, const typename L::element_type& b) {
  return is_zero(dist(phi, a, b));
}

namespace detail {

template <class S>
void require_sampler(const S& sampler) {
  if (!sampler) throw std::invalid_argument("no generator for the valuation's domain");
}

}  // namespace detail

/// Samples pairs and checks φ(a∧b)+φ(a∨b) = φ(a)+φ(b) and order preservation
/// exactly. Monotonicity is tested on the always-comparable pairs
/// a∧b ≤ a ≤ a∨b, and on (a, b) itself when comparable.
template <Lattice L>
CheckReport check_valuation(const Valuation<L>& phi, const Sampler<typename L::element_type>& sampler,
                            std::size_t samples, std::uint64_t seed) {
  detail::require_sampler(sampler);
  Rng rng(seed);
  const L& l = phi.lattice();
  CheckReport report;
  for (std::size_t i = 0; i < samples; ++i) {
    auto a = sampler(rng);
    auto b = sampler(rng);
    auto m = l.meet(a, b);
    auto j = l.join(a, b);
    GroupElem pa = phi(a), pb = phi(b), pm = phi(m), pj = phi(j);
    auto wit = [&] {
      return "a=" + l.describe(a) + " b=" + l.describe(b) + " phi(a)=" + pa.str() + " phi(b)=" + pb.str() +
             " phi(a^b)=" + pm.str() + " phi(avb)=" + pj.str();
    };
    report.record("modularity", add(pm, pj) == add(pa, pb), wit);
    bool mono = leq(pm, pa) && leq(pm, pb) && leq(pa, pj) && leq(pb, pj);
    if (l.leq(a, b)) mono = mono && leq(pa, pb);
    if (l.leq(b, a)) mono = mono && leq(pb, pa);
    report.record("monotonicity", mono, wit);
  }
  return report;
}

/**
 * The metric-type laws of d_φ on sampled elements, all as exact comparisons:
 * non-negativity, d(a,a) = 0, symmetry, the triangle inequality,
 * d(a∧z, b∧z) + d(a∨z, b∨z) ≤ d(a,b),
 * d(a∧w, b∧z) + d(a∨w, b∨z) ≤ d(a,b) + d(w,z), and the modular-map identity
 * φ(ℓ∨(a∧u)) = φ((ℓ∨a)∧u) for ℓ ≤ u.
 */
template <Lattice L>
CheckReport check_pseudometric(const Valuation<L>& phi, const Sampler<typename L::element_type>& sampler,
                               std::size_t samples, std::uint64_t seed) {
  detail::require_sampler(sampler);
  Rng rng(seed);
  const L& l = phi.lattice();
  CheckReport report;
  for (std::size_t i = 0; i < samples; ++i) {
    auto a = sampler(rng);
    auto b = sampler(rng);
    auto z = sampler(rng);
    auto w = sampler(rng);
    auto wit = [&] {
      return "a=" + l.describe(a) + " b=" + l.describe(b) + " z=" + l.describe(z) + " w=" + l.describe(w);
    };
    GroupElem dab = dist(phi, a, b);
    GroupElem zero = zero_like(dab);
    report.record("nonnegative", leq(zero, dab), wit);
    report.record("zero_on_diagonal", is_zero(dist(phi, a, a)), wit);
    report.record("symmetry", dab == dist(phi, b, a), wit);
    report.record("triangle", leq(dab, add(dist(phi, a, z), dist(phi, z, b))), wit);
    report.record("contraction",
                  leq(add(dist(phi, l.meet(a, z), l.meet(b, z)), dist(phi, l.join(a, z), l.join(b, z))), dab), wit);
    report.record("joint_contraction",
                  leq(add(dist(phi, l.meet(a, w), l.meet(b, z)), dist(phi, l.join(a, w), l.join(b, z))),
                      add(dab, dist(phi, w, z))),
                  wit);
    auto lo = l.meet(z, w);
    auto hi = l.join(z, w);
    report.record("modular_map_identity", phi(l.join(lo, l.meet(a, hi))) == phi(l.meet(l.join(lo, a), hi)), wit);
  }
  return report;
}

/**
 * ≈ is a congruence: for a₁ ≈ a₂ and b₁ ≈ b₂ (the second member of each pair
 * produced by `perturb`, which must return an ≈-equivalent element), meets,
 * joins, values and distances agree up to ≈.
 */
template <Lattice L>
CheckReport check_congruence(const Valuation<L>& phi, const Sampler<typename L::element_type>& sampler,
                             const std::function<typename L::element_type(const typename L::element_type&, Rng&)>& perturb,
                             std::size_t samples, std::uint64_t seed) {
  detail::require_sampler(sampler);
  Rng rng(seed);
  const L& l = phi.lattice();
  CheckReport report;
  for (std::size_t i = 0; i < samples; ++i) {
    auto a1 = sampler(rng);
    auto b1 = sampler(rng);
    auto a2 = perturb(a1, rng);
    auto b2 = perturb(b1, rng);
    auto wit = [&] {
      return "a1=" + l.describe(a1) + " a2=" + l.describe(a2) + " b1=" + l.describe(b1) + " b2=" + l.describe(b2);
    };
    report.record("perturbation_equivalent", approx_equal(phi, a1, a2) && approx_equal(phi, b1, b2), wit);
    report.record("meet_respected", approx_equal(phi, l.meet(a1, b1), l.meet(a2, b2)), wit);
    report.record("join_respected", approx_equal(phi, l.join(a1, b1), l.join(a2, b2)), wit);
    report.record("value_respected", phi(a1) == phi(a2), wit);
    report.record("distance_respected", dist(phi, a1, b1) == dist(phi, a2, b2), wit);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Finite-domain helpers and the quotient L/≈.

/// A valuation on a finite lattice given by its table of values.
inline Valuation<FiniteLattice> tabulated_valuation(std::string name, FiniteLattice lattice,
                                                    std::vector<GroupElem> values) {
  if (values.size() != lattice.size())
    throw shape_error("value table has " + std::to_string(values.size()) + " entries for a lattice of " +
                      std::to_string(lattice.size()));
  auto shared = std::make_shared<const std::vector<GroupElem>>(std::move(values));
  return Valuation<FiniteLattice>(std::move(name), std::move(lattice),
                                  [shared](std::size_t a) { return shared->at(a); });
}

/// Exhaustive check over every pair of a finite lattice.
inline CheckReport check_valuation_exhaustive(const Valuation<FiniteLattice>& phi) {
  const FiniteLattice& l = phi.lattice();
  CheckReport report;
  for (std::size_t a = 0; a < l.size(); ++a) {
    for (std::size_t b = 0; b < l.size(); ++b) {
      auto wit = [&] { return "a=" + l.label(a) + " b=" + l.label(b); };
      report.record("modularity", add(phi(l.meet(a, b)), phi(l.join(a, b))) == add(phi(a), phi(b)), wit);
      report.record("monotonicity", !l.leq(a, b) || leq(phi(a), phi(b)), wit);
    }
  }
  return report;
}

struct Quotient {
  FiniteLattice lattice;                          // carrier: the ≈-classes
  std::vector<GroupElem> values;                  // induced valuation, per class
  std::vector<std::size_t> class_of;              // original element -> class
  std::vector<std::vector<std::size_t>> members;  // class -> original elements

  Valuation<FiniteLattice> valuation(const std::string& name) const {
    return tabulated_valuation(name, lattice, values);
  }
};

/**
 * L/≈ for a valuation on a finite lattice. Classes are numbered by their
 * smallest member; meet and join are induced through every pair of
 * representatives. Disagreement among representatives can only come from a
 * non-valuation input and raises contract_violation naming both witnesses.
 */
inline Quotient quotient(const Valuation<FiniteLattice>& phi) {
  const FiniteLattice& l = phi.lattice();
  const std::size_t n = l.size();
  Quotient q;
  q.class_of.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    if (q.class_of[a] != n) continue;
    std::size_t c = q.members.size();
    q.members.emplace_back();
    for (std::size_t b = a; b < n; ++b) {
      if (q.class_of[b] == n && approx_equal(phi, a, b)) {
        q.class_of[b] = c;
        q.members[c].push_back(b);
      }
    }
  }
  const std::size_t k = q.members.size();

  auto induced = [&](bool is_meet) {
    std::vector<std::vector<std::size_t>> table(k, std::vector<std::size_t>(k));
    for (std::size_t x = 0; x < k; ++x) {
      for (std::size_t y = 0; y < k; ++y) {
        const std::size_t rx = q.members[x][0], ry = q.members[y][0];
        const std::size_t ref = q.class_of[is_meet ? l.meet(rx, ry) : l.join(rx, ry)];
        for (std::size_t ax : q.members[x]) {
          for (std::size_t ay : q.members[y]) {
            std::size_t got = q.class_of[is_meet ? l.meet(ax, ay) : l.join(ax, ay)];
            if (got != ref)
              throw contract_violation(std::string("induced ") + (is_meet ? "meet" : "join") +
                                       " is ill-defined: (" + l.label(rx) + ", " + l.label(ry) + ") vs (" +
                                       l.label(ax) + ", " + l.label(ay) + "); input is not a valuation");
          }
        }
        table[x][y] = ref;
      }
    }
    return table;
  };
  auto meet_table = induced(true);
  auto join_table = induced(false);

  std::vector<std::string> labels;
  for (const auto& m : q.members) {
    std::string s = "{";
    for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + l.label(m[i]);
    labels.push_back(s + "}");
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = 0; y < k; ++y)
      if (x != y && meet_table[x][y] == x) pairs.emplace_back(x, y);
  q.lattice = FiniteLattice::from_relation(std::move(labels), pairs);
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = 0; y < k; ++y)
      if (q.lattice.meet(x, y) != meet_table[x][y] || q.lattice.join(x, y) != join_table[x][y])
        throw contract_violation("induced operations do not form a lattice on the classes");

  for (std::size_t x = 0; x < k; ++x) {
    const GroupElem v = phi(q.members[x][0]);
    for (std::size_t a : q.members[x])
      if (!(phi(a) == v))
        throw contract_violation("valuation not constant on the class of " + l.label(q.members[x][0]));
    q.values.push_back(v);
  }
  return q;
}

// ---------------------------------------------------------------------------
// Transforms.

/// φ viewed as a map L^op -> E^op.
template <Lattice L>
Valuation<Opposite<L>> opposite_valuation(const Valuation<L>& phi) {
  return Valuation<Opposite<L>>("op(" + phi.name() + ")", Opposite<L>(phi.lattice()),
                                [phi](const typename L::element_type& a) { return GroupElem::opposite(phi(a)); });
}

/// φ × ψ : L1 × L2 -> E1 × E2.
template <Lattice L1, Lattice L2>
Valuation<ProductLattice<L1, L2>> product_valuation(const Valuation<L1>& phi, const Valuation<L2>& psi) {
  using P = ProductLattice<L1, L2>;
  return Valuation<P>(phi.name() + "x" + psi.name(), P(phi.lattice(), psi.lattice()),
                      [phi, psi](const typename P::element_type& a) {
                        return GroupElem::product({phi(a.first), psi(a.second)});
                      });
}

/// g ∘ φ ∘ f for a lattice homomorphism f: Src -> L and a group homomorphism g.
/// Modular whenever φ is; a valuation whenever φ is and g is positive.
template <Lattice Src, Lattice L>
Valuation<Src> compose_valuation(std::string name, std::function<GroupElem(const GroupElem&)> g,
                                 const Valuation<L>& phi, Src source,
                                 std::function<typename L::element_type(const typename Src::element_type&)> f) {
  return Valuation<Src>(std::move(name), std::move(source),
                        [g = std::move(g), phi, f = std::move(f)](const typename Src::element_type& a) {
                          auto image = f(a);
                          if (!phi.lattice().contains(image))
                            throw shape_error("lattice map lands outside the valuation's domain");
                          return g(phi(image));
                        });
}

}  // namespace lval
