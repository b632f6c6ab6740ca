#pragma once

// Reference computations that avoid the library's algorithms: membership by
// direct evaluation of the raw description, brute-force counting, exhaustive
// enumeration. Only Rational arithmetic is shared with the code under test.

#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "lval/rational.hpp"

namespace oracle {

using lval::Rational;

struct RawInterval {
  Rational lo;
  bool lo_closed;
  Rational hi;
  bool hi_closed;

  bool has(const Rational& x) const {
    bool above = lo_closed ? lo <= x : lo < x;
    bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
  }
};

using RawSet = std::vector<RawInterval>;

inline bool member(const RawSet& s, const Rational& x) {
  for (const auto& iv : s)
    if (iv.has(x)) return true;
  return false;
}

/// Every endpoint, endpoint ± 1/1000, and every midpoint between consecutive
/// endpoints of all the given raw sets.
inline std::vector<Rational> probes(const std::vector<RawSet>& sets) {
  std::set<Rational> ends;
  for (const auto& s : sets)
    for (const auto& iv : s) {
      ends.insert(iv.lo);
      ends.insert(iv.hi);
    }
  std::vector<Rational> sorted(ends.begin(), ends.end());
  std::vector<Rational> out;
  const Rational eps(1, 1000);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out.push_back(sorted[i]);
    out.push_back(sorted[i] - eps);
    out.push_back(sorted[i] + eps);
    if (i + 1 < sorted.size()) out.push_back((sorted[i] + sorted[i + 1]) / 2);
  }
  if (out.empty()) out.push_back(Rational(0));
  return out;
}

/// Length of a raw union by sweeping the sorted endpoint grid: a gap counts
/// when its midpoint is covered.
inline Rational measure(const RawSet& s) {
  std::set<Rational> ends;
  for (const auto& iv : s) {
    ends.insert(iv.lo);
    ends.insert(iv.hi);
  }
  std::vector<Rational> g(ends.begin(), ends.end());
  Rational total = 0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i)
    if (member(s, (g[i] + g[i + 1]) / 2)) total += g[i + 1] - g[i];
  return total;
}

/// Count of 1 ≤ x ≤ n with gcd(x, n) = 1.
inline std::uint64_t coprime_count(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t x = 1; x <= n; ++x)
    if (std::gcd(x, n) == 1) ++c;
  return c;
}

/// All vectors of span(gens) in GF(2)^n, as a set of bit masks.
inline std::set<std::uint32_t> span(const std::vector<std::uint32_t>& gens, unsigned n) {
  std::set<std::uint32_t> out{0};
  for (auto g : gens) {
    std::set<std::uint32_t> next = out;
    for (auto v : out) next.insert(v ^ g);
    out = std::move(next);
  }
  for (auto v : out)
    if (n < 32 && (v >> n) != 0) out.clear();
  return out;
}

inline unsigned log2_size(std::size_t size) {
  unsigned k = 0;
  while ((std::size_t{1} << k) < size) ++k;
  return k;
}

/// Step function as a sum of weighted raw intervals plus point overrides.
struct RawStep {
  std::vector<std::pair<RawInterval, Rational>> parts;
  std::vector<std::pair<Rational, Rational>> points;

  Rational at(const Rational& x) const {
    for (const auto& [p, v] : points)
      if (p == x) return v;
    Rational s = 0;
    for (const auto& [iv, c] : parts)
      if (iv.has(x)) s += c;
    return s;
  }
};

}  // namespace oracle
