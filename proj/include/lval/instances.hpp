#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "lval/group.hpp"
#include "lval/interval_set.hpp"
#include "lval/random.hpp"
#include "lval/step_function.hpp"
#include "lval/valuation.hpp"

namespace lval {

// ---------------------------------------------------------------------------
// Divisibility and the totient.

/// Euler's φ(n) from the prime factorization: n·∏(1 − 1/p).
inline std::uint64_t totient(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("totient(0) is undefined");
  std::uint64_t result = n;
  for (const auto& [p, e] : factorize(n)) result = result / p * (p - 1);
  return result;
}

/// Positive integers ordered by divisibility: meet = gcd, join = lcm.
struct DivLattice {
  using element_type = std::uint64_t;
  std::uint64_t meet(std::uint64_t a, std::uint64_t b) const { return std::gcd(a, b); }
  std::uint64_t join(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t g = std::gcd(a, b);
    std::uint64_t q = a / g;
    if (q != 0 && b > UINT64_MAX / q) throw std::overflow_error("lcm overflows 64 bits");
    return q * b;
  }
  bool leq(std::uint64_t a, std::uint64_t b) const { return b % a == 0; }
  bool contains(std::uint64_t a) const { return a >= 1; }
  std::string describe(std::uint64_t a) const { return std::to_string(a); }
};

/// n ↦ φ(n) into ℚ° (multiplicative, ordered by divisibility).
inline Valuation<DivLattice> totient_valuation() {
  return Valuation<DivLattice>("totient", DivLattice{},
                               [](std::uint64_t n) { return GroupElem(DivPos::from_integer(totient(n))); });
}

inline Sampler<std::uint64_t> divisor_sampler(std::uint64_t bound) {
  return [bound](Rng& rng) { return static_cast<std::uint64_t>(uniform_int(rng, 1, static_cast<std::int64_t>(bound))); };
}

// ---------------------------------------------------------------------------
// Finite subsets of {1..k}, k ≤ 32, as bit masks.

struct SubsetLattice {
  using element_type = std::uint32_t;
  unsigned universe = 20;

  std::uint32_t meet(std::uint32_t a, std::uint32_t b) const { return a & b; }
  std::uint32_t join(std::uint32_t a, std::uint32_t b) const { return a | b; }
  bool leq(std::uint32_t a, std::uint32_t b) const { return (a & ~b) == 0; }
  bool contains(std::uint32_t a) const { return universe >= 32 || (a >> universe) == 0; }
  std::string describe(std::uint32_t a) const {
    std::string out = "{";
    for (unsigned i = 0; i < 32; ++i)
      if (a >> i & 1u) out += (out.size() > 1 ? "," : "") + std::to_string(i + 1);
    return out + "}";
  }
};

inline Valuation<SubsetLattice> counting_valuation(unsigned universe = 20) {
  return Valuation<SubsetLattice>("counting", SubsetLattice{universe},
                                  [](std::uint32_t a) { return GroupElem(Rational(std::popcount(a))); });
}

inline Sampler<std::uint32_t> subset_sampler(unsigned universe = 20) {
  return [universe](Rng& rng) {
    std::uint64_t mask = universe >= 32 ? 0xffffffffULL : ((1ULL << universe) - 1);
    return static_cast<std::uint32_t>(rng() & mask);
  };
}

// ---------------------------------------------------------------------------
// Subspaces of GF(2)^n, n ≤ 24.

/// A subspace stored by its reduced row-echelon basis: each row's leading
/// (highest) bit is zero in every other row, rows sorted descending. The
/// form is unique, so equality of subspaces is equality of bases.
class GF2Subspace {
 public:
  static constexpr unsigned max_ambient = 24;

  explicit GF2Subspace(unsigned ambient = 0, std::vector<std::uint32_t> vectors = {}) : n_(ambient) {
    if (ambient > max_ambient) throw std::invalid_argument("GF(2) ambient dimension above 24");
    for (auto v : vectors)
      if (ambient < 32 && (v >> ambient) != 0) throw std::invalid_argument("vector outside GF(2)^" + std::to_string(ambient));
    for (auto r : reduce64(std::vector<std::uint64_t>(vectors.begin(), vectors.end())))
      rows_.push_back(static_cast<std::uint32_t>(r));
  }

  /// span{e_i : i in indices}, 1-based.
  static GF2Subspace span_units(unsigned ambient, const std::vector<unsigned>& indices) {
    std::vector<std::uint32_t> v;
    for (unsigned i : indices) v.push_back(1u << (i - 1));
    return GF2Subspace(ambient, v);
  }

  unsigned ambient() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<std::uint32_t>& basis() const { return rows_; }

  bool contains_vector(std::uint32_t v) const {
    for (auto r : rows_)
      if ((v ^ r) < v) v ^= r;
    return v == 0;
  }

  GF2Subspace join(const GF2Subspace& w) const {
    require_same_ambient(w);
    std::vector<std::uint32_t> all = rows_;
    all.insert(all.end(), w.rows_.begin(), w.rows_.end());
    return GF2Subspace(n_, all);
  }

  /// U ∩ W by Zassenhaus: reduce rows (u|u) and (w|0); rows whose left half
  /// vanishes carry a basis of the intersection in their right half.
  GF2Subspace meet(const GF2Subspace& w) const {
    require_same_ambient(w);
    std::vector<std::uint64_t> block;
    for (auto u : rows_) block.push_back((std::uint64_t(u) << n_) | u);
    for (auto x : w.rows_) block.push_back(std::uint64_t(x) << n_);
    std::vector<std::uint32_t> common;
    for (auto r : reduce64(block))
      if ((r >> n_) == 0) common.push_back(static_cast<std::uint32_t>(r));
    return GF2Subspace(n_, common);
  }

  std::string str() const {
    std::string out = "span{";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      out += i ? "," : "";
      for (unsigned b = n_; b-- > 0;) out += (rows_[i] >> b & 1u) ? '1' : '0';
    }
    return out + "}";
  }

  friend bool operator==(const GF2Subspace&, const GF2Subspace&) = default;

 private:
  void require_same_ambient(const GF2Subspace& w) const {
    if (w.n_ != n_)
      throw shape_error("GF(2) ambient mismatch: " + std::to_string(n_) + " vs " + std::to_string(w.n_));
  }

  static std::vector<std::uint64_t> reduce64(std::vector<std::uint64_t> rows) {
    std::vector<std::uint64_t> basis;
    for (auto v : rows) {
      for (auto b : basis)
        if ((v ^ b) < v) v ^= b;
      if (v == 0) continue;
      for (auto& b : basis)
        if (b & std::bit_floor(v)) b ^= v;
      basis.push_back(v);
    }
    std::sort(basis.rbegin(), basis.rend());
    return basis;
  }

  unsigned n_;
  std::vector<std::uint32_t> rows_;
};

struct GF2SubspaceLattice {
  using element_type = GF2Subspace;
  unsigned ambient = 8;
  GF2Subspace meet(const GF2Subspace& a, const GF2Subspace& b) const { return a.meet(b); }
  GF2Subspace join(const GF2Subspace& a, const GF2Subspace& b) const { return a.join(b); }
  bool leq(const GF2Subspace& a, const GF2Subspace& b) const { return a.join(b) == b; }
  bool contains(const GF2Subspace& a) const { return a.ambient() == ambient; }
  std::string describe(const GF2Subspace& a) const { return a.str(); }
};

inline Valuation<GF2SubspaceLattice> dimension_valuation(unsigned ambient = 8) {
  return Valuation<GF2SubspaceLattice>("dim", GF2SubspaceLattice{ambient}, [](const GF2Subspace& u) {
    return GroupElem(Rational(static_cast<long long>(u.dim())));
  });
}

inline Sampler<GF2Subspace> gf2_sampler(unsigned ambient = 8, unsigned max_generators = 4) {
  return [=](Rng& rng) {
    std::vector<std::uint32_t> gens;
    auto count = uniform_int(rng, 0, max_generators);
    for (std::int64_t i = 0; i < count; ++i)
      gens.push_back(static_cast<std::uint32_t>(rng() & ((1ULL << ambient) - 1)));
    return GF2Subspace(ambient, gens);
  };
}

// ---------------------------------------------------------------------------
// Interval sets and step functions.

inline Valuation<IntervalSetLattice> mu_S_valuation() {
  return Valuation<IntervalSetLattice>("mu_S", IntervalSetLattice{},
                                       [](const IntervalSet& a) { return GroupElem(mu_S(a)); });
}

inline Valuation<StepFnLattice> phi_S_valuation() {
  return Valuation<StepFnLattice>("phi_S", StepFnLattice{}, [](const StepFn& f) { return GroupElem(phi_S(f)); });
}

namespace detail {

inline Rational sample_endpoint(Rng& rng) { return Rational(Integer(uniform_int(rng, -24, 24)), Integer(uniform_int(rng, 1, 4))); }

inline Interval sample_interval(Rng& rng) {
  Rational a = sample_endpoint(rng), b = sample_endpoint(rng);
  if (b < a) std::swap(a, b);
  if (coin(rng, 8)) b = a;
  bool lo_closed = coin(rng), hi_closed = coin(rng);
  if (a == b) lo_closed = hi_closed = true;
  return {a, lo_closed, b, hi_closed};
}

}  // namespace detail

/// Unions of up to `max_pieces` random intervals with small-denominator
/// endpoints and random boundary kinds (singletons included).
inline Sampler<IntervalSet> interval_set_sampler(int max_pieces = 3) {
  return [max_pieces](Rng& rng) {
    std::vector<Interval> raw;
    auto count = uniform_int(rng, 0, max_pieces);
    for (std::int64_t i = 0; i < count; ++i) raw.push_back(detail::sample_interval(rng));
    return IntervalSet::make(raw);
  };
}

inline Sampler<StepFn> step_fn_sampler(int max_parts = 3) {
  return [max_parts](Rng& rng) {
    std::vector<StepPart> parts;
    std::vector<PointAssignment> points;
    auto count = uniform_int(rng, 0, max_parts);
    for (std::int64_t i = 0; i < count; ++i) parts.push_back({detail::sample_interval(rng), random_rational(rng, 6, 3)});
    if (coin(rng, 4)) points.push_back({detail::sample_endpoint(rng), random_rational(rng, 6, 3)});
    return step_make(parts, points);
  };
}

/// Adds or removes a single point: same measure, usually a different set.
inline IntervalSet perturb_null_iset(const IntervalSet& a, Rng& rng) {
  IntervalSet p = IntervalSet::make({Interval::point(detail::sample_endpoint(rng))});
  return coin(rng) ? (a | p) : (a - p);
}

/// Overrides the value at one point: same integral.
inline StepFn perturb_null_step(const StepFn& f, Rng& rng) {
  Rational x = detail::sample_endpoint(rng);
  Rational delta = random_rational(rng, 6, 3) - f.at(x);
  return f + step_make({{Interval::point(x), delta}});
}

}  // namespace lval
