#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lval/check_report.hpp"
#include "lval/errors.hpp"
#include "lval/group.hpp"
#include "lval/lattice.hpp"
#include "lval/valuation.hpp"

namespace lval {

/// a ≤ z ≤ b with a, b in L and φ(a) = φ(b).
template <class E>
struct SandwichWitness {
  E lower;
  E upper;
  E target;
};

class invalid_witness : public std::invalid_argument {
 public:
  invalid_witness(std::string clause, const std::string& detail)
      : std::invalid_argument("sandwich witness rejected (" + clause + "): " + detail), clause_(std::move(clause)) {}
  const std::string& clause() const { return clause_; }

 private:
  std::string clause_;
};

/**
 * φ•(z) read off a sandwich. The order is taken from φ's lattice, which must
 * also contain z. `in_L`, when given, checks that the bounds belong to the
 * sublattice on which φ is a valuation.
 */
template <Lattice L>
GroupElem convex_value(const Valuation<L>& phi, const SandwichWitness<typename L::element_type>& w,
                       const std::function<bool(const typename L::element_type&)>& in_L = {}) {
  const L& l = phi.lattice();
  if (in_L && !in_L(w.lower)) throw invalid_witness("a in L", l.describe(w.lower));
  if (in_L && !in_L(w.upper)) throw invalid_witness("b in L", l.describe(w.upper));
  if (!l.leq(w.lower, w.target)) throw invalid_witness("a <= z", l.describe(w.lower) + " vs " + l.describe(w.target));
  if (!l.leq(w.target, w.upper)) throw invalid_witness("z <= b", l.describe(w.target) + " vs " + l.describe(w.upper));
  GroupElem pa = phi(w.lower), pb = phi(w.upper);
  if (!(pa == pb)) throw invalid_witness("phi(a) = phi(b)", pa.str() + " vs " + pb.str());
  return pa;
}

/// A valuation system on a finite ambient lattice V: the sublattice L ⊆ V
/// (as element indices of V) and φ on L.
struct FiniteSystem {
  FiniteLattice ambient;
  std::vector<std::size_t> members;        // sorted
  std::map<std::size_t, GroupElem> values;  // φ on members

  bool contains(std::size_t z) const { return values.count(z) != 0; }

  /// L with the order and operations inherited from V.
  FiniteLattice lattice() const {
    std::vector<std::string> labels;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < members.size(); ++i) {
      labels.push_back(ambient.label(members[i]));
      for (std::size_t j = 0; j < members.size(); ++j)
        if (ambient.leq(members[i], members[j])) pairs.emplace_back(i, j);
    }
    return FiniteLattice::from_relation(labels, pairs);
  }

  Valuation<FiniteLattice> valuation(const std::string& name) const {
    std::vector<GroupElem> vals;
    for (auto m : members) vals.push_back(values.at(m));
    return tabulated_valuation(name, lattice(), vals);
  }

  friend bool operator==(const FiniteSystem& a, const FiniteSystem& b) {
    return a.ambient == b.ambient && a.members == b.members && a.values == b.values;
  }
};

struct Convexification {
  FiniteSystem system;                                           // (V, L•, φ•)
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> witnesses;  // z ↦ (a, b)
  CheckReport report;
};

namespace detail {

inline void require_sublattice(const FiniteLattice& v, const std::vector<std::size_t>& members) {
  std::set<std::size_t> in(members.begin(), members.end());
  for (auto a : members) {
    require_member(v, a);
    for (auto b : members)
      if (!in.count(v.meet(a, b)) || !in.count(v.join(a, b)))
        throw std::invalid_argument("L is not a sublattice of V: " + v.label(a) + ", " + v.label(b));
  }
}

inline Convexification convexify_core(const FiniteLattice& v, const std::vector<std::size_t>& members,
                                      const std::vector<GroupElem>& values) {
  if (members.size() != values.size()) throw std::invalid_argument("need one value per member of L");
  require_sublattice(v, members);
  Convexification out;
  out.system.ambient = v;
  std::map<std::size_t, GroupElem> phi;
  for (std::size_t i = 0; i < members.size(); ++i) phi.emplace(members[i], values[i]);
  for (std::size_t z = 0; z < v.size(); ++z) {
    for (auto a : members) {
      if (!v.leq(a, z)) continue;
      for (auto b : members) {
        if (!v.leq(z, b) || !(phi.at(a) == phi.at(b))) continue;
        auto [it, inserted] = out.system.values.emplace(z, phi.at(a));
        if (inserted) {
          out.witnesses.emplace(z, std::make_pair(a, b));
        } else if (!(it->second == phi.at(a))) {
          auto [a0, b0] = out.witnesses.at(z);
          throw contract_violation("sandwich values disagree at " + v.label(z) + ": (" + v.label(a0) + ", " +
                                   v.label(b0) + ") gives " + it->second.str() + ", (" + v.label(a) + ", " +
                                   v.label(b) + ") gives " + phi.at(a).str());
        }
      }
    }
  }
  for (const auto& [z, val] : out.system.values) out.system.members.push_back(z);
  return out;
}

}  // namespace detail

/**
 * L• = {z ∈ V : a ≤ z ≤ b for some a, b ∈ L with φ(a) = φ(b)} and φ•(z) = φ(a),
 * by exhaustive search. The report covers: φ• extends φ, φ• is a valuation
 * on L• (modular and monotone, exhaustively), L• is a sublattice and convex,
 * and convexifying again changes nothing.
 */
inline Convexification convexify_finite(const FiniteLattice& v, const std::vector<std::size_t>& members,
                                        const std::vector<GroupElem>& values) {
  Convexification out = detail::convexify_core(v, members, values);
  const FiniteSystem& s = out.system;
  CheckReport& report = out.report;

  for (std::size_t i = 0; i < members.size(); ++i)
    report.record("extends", s.values.at(members[i]) == values[i], [&] { return v.label(members[i]); });

  for (auto a : s.members)
    for (auto b : s.members) {
      auto wit = [&] { return "a=" + v.label(a) + " b=" + v.label(b); };
      auto m = v.meet(a, b), j = v.join(a, b);
      bool closed = s.contains(m) && s.contains(j);
      report.record("sublattice", closed, wit);
      if (closed)
        report.record("modularity", add(s.values.at(m), s.values.at(j)) == add(s.values.at(a), s.values.at(b)), wit);
      if (v.leq(a, b)) report.record("monotonicity", leq(s.values.at(a), s.values.at(b)), wit);
      if (!v.leq(a, b) || !(s.values.at(a) == s.values.at(b))) continue;
      for (std::size_t z = 0; z < v.size(); ++z)
        if (v.leq(a, z) && v.leq(z, b))
          report.record("convex", s.contains(z), [&] { return wit() + " z=" + v.label(z); });
    }

  std::vector<GroupElem> again;
  for (auto z : s.members) again.push_back(s.values.at(z));
  report.record("idempotent", detail::convexify_core(v, s.members, again).system == s);
  return out;
}

}  // namespace lval
