#pragma once

#include <algorithm>
#include <array>
#include <concepts>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lval/errors.hpp"
#include "lval/rational.hpp"

namespace lval {

/// A lattice handle: answers meet/join/leq on its element type, can tell
/// whether a value belongs to its carrier, and can render an element for
/// counterexample output.
template <class L>
concept Lattice = requires(const L& l, const typename L::element_type& a) {
  requires std::equality_comparable<typename L::element_type>;
  { l.meet(a, a) } -> std::convertible_to<typename L::element_type>;
  { l.join(a, a) } -> std::convertible_to<typename L::element_type>;
  { l.leq(a, a) } -> std::convertible_to<bool>;
  { l.contains(a) } -> std::convertible_to<bool>;
  { l.describe(a) } -> std::convertible_to<std::string>;
};

enum class LatticeOp { meet, join, leq };

template <Lattice L>
using LatticeOpResult = std::variant<typename L::element_type, bool>;

template <Lattice L>
void require_member(const L& lattice, const typename L::element_type& a) {
  if (!lattice.contains(a)) throw foreign_element("element " + lattice.describe(a) + " is not in the lattice");
}

template <Lattice L>
LatticeOpResult<L> lattice_op(const L& lattice, LatticeOp kind, const typename L::element_type& a,
                              const typename L::element_type& b) {
  require_member(lattice, a);
  require_member(lattice, b);
  switch (kind) {
    case LatticeOp::meet: return lattice.meet(a, b);
    case LatticeOp::join: return lattice.join(a, b);
    case LatticeOp::leq: return lattice.leq(a, b);
  }
  return lattice.leq(a, b);
}

// ---------------------------------------------------------------------------

class not_a_lattice : public std::invalid_argument {
 public:
  not_a_lattice(std::string a, std::string b, const std::string& missing)
      : std::invalid_argument("not a lattice: {" + a + ", " + b + "} has no " + missing),
        pair(std::move(a), std::move(b)) {}
  std::pair<std::string, std::string> pair;
};

class not_a_partial_order : public std::invalid_argument {
 public:
  not_a_partial_order(std::string a, std::string b)
      : std::invalid_argument("not a partial order: " + a + " <= " + b + " <= " + a + " with " + a + " != " + b),
        pair(std::move(a), std::move(b)) {}
  std::pair<std::string, std::string> pair;
};

/**
 * Explicit lattice on at most 64 labelled elements with precomputed
 * meet/join tables. Elements are indices into the carrier.
 */
class FiniteLattice {
 public:
  using element_type = std::size_t;
  static constexpr std::size_t max_size = 64;

  /// Takes the reflexive-transitive closure of `leq_pairs` and tabulates
  /// meets and joins. Throws not_a_partial_order on a cycle and
  /// not_a_lattice on the first pair (in index order) lacking a glb or lub.
  static FiniteLattice build(std::vector<std::string> carrier,
                             const std::vector<std::pair<std::string, std::string>>& leq_pairs) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < carrier.size(); ++i)
      if (!index.emplace(carrier[i], i).second)
        throw std::invalid_argument("duplicate carrier label \"" + carrier[i] + "\"");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& [a, b] : leq_pairs) {
      auto ia = index.find(a), ib = index.find(b);
      if (ia == index.end() || ib == index.end())
        throw std::invalid_argument("order pair mentions unknown element: [" + a + ", " + b + "]");
      pairs.emplace_back(ia->second, ib->second);
    }
    return from_relation(std::move(carrier), pairs);
  }

  static FiniteLattice from_relation(std::vector<std::string> carrier,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    const std::size_t n = carrier.size();
    if (n == 0) throw std::invalid_argument("a lattice needs at least one element");
    if (n > max_size) throw std::invalid_argument("finite lattices are capped at 64 elements");
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
    for (auto [a, b] : pairs) le.at(a).at(b) = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (le[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (le[k][j]) le[i][j] = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (le[i][j] && le[j][i]) throw not_a_partial_order(carrier[i], carrier[j]);

    FiniteLattice L;
    L.labels_ = std::move(carrier);
    L.le_ = std::move(le);
    L.meet_.assign(n, std::vector<std::size_t>(n));
    L.join_.assign(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        auto glb = L.extremal_bound(a, b, /*lower=*/true);
        if (!glb) throw not_a_lattice(L.labels_[a], L.labels_[b], "greatest lower bound");
        auto lub = L.extremal_bound(a, b, /*lower=*/false);
        if (!lub) throw not_a_lattice(L.labels_[a], L.labels_[b], "least upper bound");
        L.meet_[a][b] = *glb;
        L.join_[a][b] = *lub;
      }
    }
    return L;
  }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    throw foreign_element("no element labelled \"" + label + "\"");
  }

  std::size_t meet(std::size_t a, std::size_t b) const { return meet_.at(a).at(b); }
  std::size_t join(std::size_t a, std::size_t b) const { return join_.at(a).at(b); }
  bool leq(std::size_t a, std::size_t b) const { return le_.at(a).at(b); }
  bool contains(std::size_t a) const { return a < labels_.size(); }
  std::string describe(std::size_t a) const { return a < labels_.size() ? labels_[a] : "#" + std::to_string(a); }

  std::size_t bottom() const {
    std::size_t b = 0;
    for (std::size_t i = 1; i < size(); ++i) b = meet(b, i);
    return b;
  }
  std::size_t top() const {
    std::size_t t = 0;
    for (std::size_t i = 1; i < size(); ++i) t = join(t, i);
    return t;
  }

  /// Covering-free listing of the order, usable to rebuild the lattice.
  std::vector<std::pair<std::size_t, std::size_t>> order_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (i != j && le_[i][j]) out.emplace_back(i, j);
    return out;
  }

  friend bool operator==(const FiniteLattice&, const FiniteLattice&) = default;

 private:
  std::optional<std::size_t> extremal_bound(std::size_t a, std::size_t b, bool lower) const {
    const std::size_t n = size();
    std::vector<std::size_t> bounds;
    for (std::size_t c = 0; c < n; ++c)
      if (lower ? (le_[c][a] && le_[c][b]) : (le_[a][c] && le_[b][c])) bounds.push_back(c);
    for (std::size_t c : bounds) {
      bool extremal = std::all_of(bounds.begin(), bounds.end(),
                                  [&](std::size_t d) { return lower ? le_[d][c] : le_[c][d]; });
      if (extremal) return c;
    }
    return std::nullopt;
  }

  std::vector<std::string> labels_;
  std::vector<std::vector<bool>> le_;
  std::vector<std::vector<std::size_t>> meet_;
  std::vector<std::vector<std::size_t>> join_;
};

/// The n-element chain 0 < 1 < ... < n-1.
inline FiniteLattice chain_lattice(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
    if (i > 0) pairs.emplace_back(i - 1, i);
  }
  return FiniteLattice::from_relation(labels, pairs);
}

/// Subsets of {1..k} ordered by inclusion; element i is the subset with bitmask i.
inline FiniteLattice powerset_lattice(std::size_t k) {
  if (k > 6) throw std::invalid_argument("powerset_lattice: at most 6 points (64 elements)");
  std::size_t n = std::size_t{1} << k;
  std::vector<std::string> labels;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t m = 0; m < n; ++m) {
    std::string s = "{";
    for (std::size_t b = 0; b < k; ++b)
      if (m >> b & 1) s += (s.size() > 1 ? "," : "") + std::to_string(b + 1);
    labels.push_back(s + "}");
    for (std::size_t b = 0; b < k; ++b)
      if (!(m >> b & 1)) pairs.emplace_back(m, m | (std::size_t{1} << b));
  }
  return FiniteLattice::from_relation(labels, pairs);
}

/// The diamond M3: 0 < a, b, c < 1 with a, b, c pairwise incomparable.
inline FiniteLattice m3_lattice() {
  return FiniteLattice::build({"0", "a", "b", "c", "1"},
                              {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}});
}

/// The pentagon N5: 0 < a < c < 1, 0 < b < 1.
inline FiniteLattice n5_lattice() {
  return FiniteLattice::build({"0", "a", "b", "c", "1"}, {{"0", "a"}, {"a", "c"}, {"c", "1"}, {"0", "b"}, {"b", "1"}});
}

struct DistributivityResult {
  bool distributive = true;
  /// Lexicographically first (a, b, c) with a∧(b∨c) != (a∧b)∨(a∧c).
  std::optional<std::array<std::size_t, 3>> witness;
};

/// Exhaustive triple scan. On a finite lattice this also decides
/// σ-distributivity, since countable meets and joins reduce to finite ones.
inline DistributivityResult check_distributive(const FiniteLattice& L) {
  for (std::size_t a = 0; a < L.size(); ++a)
    for (std::size_t b = 0; b < L.size(); ++b)
      for (std::size_t c = 0; c < L.size(); ++c)
        if (L.meet(a, L.join(b, c)) != L.join(L.meet(a, b), L.meet(a, c)))
          return {false, std::array<std::size_t, 3>{a, b, c}};
  return {};
}

// ---------------------------------------------------------------------------

/// L^op: same carrier, order reversed, meet and join swapped.
template <Lattice L>
class Opposite {
 public:
  using element_type = typename L::element_type;
  Opposite() = default;
  explicit Opposite(L inner) : inner_(std::move(inner)) {}

  element_type meet(const element_type& a, const element_type& b) const { return inner_.join(a, b); }
  element_type join(const element_type& a, const element_type& b) const { return inner_.meet(a, b); }
  bool leq(const element_type& a, const element_type& b) const { return inner_.leq(b, a); }
  bool contains(const element_type& a) const { return inner_.contains(a); }
  std::string describe(const element_type& a) const { return inner_.describe(a); }
  const L& inner() const { return inner_; }

 private:
  L inner_;
};

/// L1 × L2 with the componentwise order.
template <Lattice L1, Lattice L2>
class ProductLattice {
 public:
  using element_type = std::pair<typename L1::element_type, typename L2::element_type>;
  ProductLattice() = default;
  ProductLattice(L1 first, L2 second) : first_(std::move(first)), second_(std::move(second)) {}

  element_type meet(const element_type& a, const element_type& b) const {
    return {first_.meet(a.first, b.first), second_.meet(a.second, b.second)};
  }
  element_type join(const element_type& a, const element_type& b) const {
    return {first_.join(a.first, b.first), second_.join(a.second, b.second)};
  }
  bool leq(const element_type& a, const element_type& b) const {
    return first_.leq(a.first, b.first) && second_.leq(a.second, b.second);
  }
  bool contains(const element_type& a) const { return first_.contains(a.first) && second_.contains(a.second); }
  std::string describe(const element_type& a) const {
    return "(" + first_.describe(a.first) + ", " + second_.describe(a.second) + ")";
  }
  const L1& first() const { return first_; }
  const L2& second() const { return second_; }

 private:
  L1 first_;
  L2 second_;
};

/// The rationals as a chain: meet = min, join = max.
struct RationalChain {
  using element_type = Rational;
  Rational meet(const Rational& a, const Rational& b) const { return min(a, b); }
  Rational join(const Rational& a, const Rational& b) const { return max(a, b); }
  bool leq(const Rational& a, const Rational& b) const { return a <= b; }
  bool contains(const Rational&) const { return true; }
  std::string describe(const Rational& a) const { return a.str(); }
};

}  // namespace lval
