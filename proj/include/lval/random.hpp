#pragma once

#include <cstdint>
#include <random>

#include "lval/rational.hpp"

namespace lval {

/// The single RNG type used for every seeded check. Seeding flows from one
/// integer so that reports are replayable.
using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi]. Implemented by hand because the standard
/// distributions are not bit-identical across library vendors.
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

inline bool coin(Rng& rng, unsigned one_in = 2) { return rng() % one_in == 0; }

/// Rational with numerator in [-num_bound, num_bound] and denominator in [1, den_bound].
inline Rational random_rational(Rng& rng, std::int64_t num_bound, std::int64_t den_bound) {
  return Rational(Integer(uniform_int(rng, -num_bound, num_bound)),
                  Integer(uniform_int(rng, 1, den_bound)));
}

}  // namespace lval
