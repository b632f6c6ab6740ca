#pragma once

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lval/errors.hpp"
#include "lval/rational.hpp"

namespace lval {

// ---------------------------------------------------------------------------
// ⟨−,−⟩ : ℕ×ℕ → ℕ∖{1}, Cantor's diagonal enumeration shifted to start at 2.

inline Integer pair(const Integer& a, const Integer& b) {
  if (a < 1 || b < 1) throw std::invalid_argument("pair takes positive integers");
  Integer x = a - 1, y = b - 1;
  return (x + y) * (x + y + 1) / 2 + y + 2;
}

/// Inverse of pair on {2, 3, …}; 1 is the tuple terminator and has no halves.
inline std::optional<std::pair<Integer, Integer>> unpair(const Integer& z) {
  if (z < 1) throw std::invalid_argument("codes are positive integers");
  if (z == 1) return std::nullopt;
  Integer w = z - 2;
  Integer s = (boost::multiprecision::sqrt(Integer(8 * w + 1)) - 1) / 2;
  Integer y = w - s * (s + 1) / 2;
  return std::make_pair(s - y + 1, y + 1);
}

/// ⟨a₁a₂⋯aₙ⟩ = ⟨a₁,⟨a₂,…⟨aₙ,1⟩…⟩⟩; the empty tuple is 1.
inline Integer tuple_encode(const std::vector<Integer>& xs) {
  Integer code = 1;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) code = pair(*it, code);
  return code;
}

/// Every code decodes: tails strictly decrease under unpair, reaching 1.
inline std::vector<Integer> tuple_decode(const Integer& code) {
  std::vector<Integer> out;
  Integer k = code;
  while (auto halves = unpair(k)) {
    out.push_back(halves->first);
    k = halves->second;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stumps.

/// A leaf, or a node whose listed children come first and every unlisted
/// child is a leaf.
struct Stump {
  bool leaf = true;
  std::vector<Stump> children;

  static Stump make_leaf() { return {}; }
  static Stump node(std::vector<Stump> kids = {}) { return {false, std::move(kids)}; }

  std::size_t depth() const {
    std::size_t d = 0;
    for (const auto& c : children) d = std::max(d, c.depth());
    return leaf ? 0 : d + 1;
  }
  friend bool operator==(const Stump&, const Stump&) = default;
};

/// α[leaf] = 0; α[node] = max over children of α+1, where the implicit leaf
/// children contribute 1.
inline std::size_t stump_alpha(const Stump& s) {
  if (s.leaf) return 0;
  std::size_t best = 1;
  for (const auto& c : s.children) best = std::max(best, stump_alpha(c) + 1);
  return best;
}

// ---------------------------------------------------------------------------
// Truncated Baire space and the decode maps.

/// All maps {1..D} → {1..M}, with M^D ≤ 10⁶ so the space can be enumerated.
class TruncatedBaire {
 public:
  using Point = std::vector<std::uint32_t>;

  TruncatedBaire(std::uint32_t depth, std::uint32_t alphabet) : d_(depth), m_(alphabet) {
    if (depth < 1 || alphabet < 1) throw std::invalid_argument("truncated Baire space needs D, M ≥ 1");
    std::uint64_t size = 1;
    for (std::uint32_t i = 0; i < depth; ++i) {
      size *= alphabet;
      if (size > 1000000) throw std::invalid_argument("truncated Baire space larger than 10^6 points");
    }
    size_ = size;
  }

  /// "DxM", e.g. "4x4".
  static TruncatedBaire parse(const std::string& spec) {
    auto x = spec.find('x');
    if (x == std::string::npos) throw parse_error("space must look like DxM, got \"" + spec + "\"");
    try {
      return TruncatedBaire(static_cast<std::uint32_t>(std::stoul(spec.substr(0, x))),
                            static_cast<std::uint32_t>(std::stoul(spec.substr(x + 1))));
    } catch (const std::logic_error&) {
      throw parse_error("space must look like DxM, got \"" + spec + "\"");
    }
  }

  std::uint32_t depth() const { return d_; }
  std::uint32_t alphabet() const { return m_; }
  std::uint64_t size() const { return size_; }

  bool contains(const Point& p) const {
    if (p.size() != d_) return false;
    return std::all_of(p.begin(), p.end(), [&](std::uint32_t v) { return v >= 1 && v <= m_; });
  }

  /// "1,2,1" → {1, 2, 1}.
  Point parse_point(const std::string& text) const {
    Point p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        p.push_back(static_cast<std::uint32_t>(std::stoul(item)));
      } catch (const std::logic_error&) {
        throw parse_error("bad point entry \"" + item + "\"");
      }
    }
    if (!contains(p))
      throw parse_error("point \"" + text + "\" is not a map {1.." + std::to_string(d_) + "} -> {1.." +
                        std::to_string(m_) + "}");
    return p;
  }

  /// Points in lexicographic order.
  std::vector<Point> points() const {
    std::vector<Point> out;
    out.reserve(size_);
    Point p(d_, 1);
    for (std::uint64_t k = 0; k < size_; ++k) {
      out.push_back(p);
      for (std::size_t i = d_; i-- > 0;) {
        if (++p[i] <= m_) break;
        p[i] = 1;
      }
    }
    return out;
  }

 private:
  std::uint32_t d_, m_;
  std::uint64_t size_ = 1;
};

enum class CodeKind { Sprime, Scap, A };

struct DecodeResult {
  bool member = false;
  bool truncated = false;           // some infinite family was cut at child_cap
  std::vector<std::string> flags;   // out-of-range basic sets, malformed codes

  void flag(const std::string& f) {
    if (std::find(flags.begin(), flags.end(), f) == flags.end()) flags.push_back(f);
  }
};

namespace detail {

/// ⟦k⟧^{S′}: ⟨1mn⟩ is the complement of B^m_n, ⟨2mn⟩ is B^m_n, else ∅.
inline bool decode_sprime(const Integer& k, const TruncatedBaire& space, const TruncatedBaire::Point& p,
                          DecodeResult& meta) {
  auto t = tuple_decode(k);
  if (t.size() != 3 || (t[0] != 1 && t[0] != 2)) {
    meta.flag("code " + k.str() + " is not of the form <1mn> or <2mn>: empty set");
    return false;
  }
  const Integer &m = t[1], &n = t[2];
  bool in_b;
  if (n > space.depth() || m > space.alphabet()) {
    meta.flag("B^" + m.str() + "_" + n.str() + " lies outside the truncation: taken as empty");
    in_b = false;
  } else {
    in_b = p[static_cast<std::size_t>(n) - 1] == static_cast<std::uint32_t>(m);
  }
  return t[0] == 2 ? in_b : !in_b;
}

inline bool decode_scap(const Integer& k, const TruncatedBaire& space, const TruncatedBaire::Point& p, DecodeResult& meta) {
  bool in = true;
  for (const auto& a : tuple_decode(k)) in = decode_sprime(a, space, p, meta) && in;
  return in;
}

inline bool decode_a(const Integer& k, const TruncatedBaire& space, const TruncatedBaire::Point& p, DecodeResult& meta) {
  bool in = false;
  for (const auto& a : tuple_decode(k)) in = decode_scap(a, space, p, meta) || in;
  return in;
}

}  // namespace detail

/// Membership of `point` in ⟦code⟧ for the chosen family. The empty tuple
/// gives the whole space for S∩′ (empty intersection) and ∅ for A.
inline DecodeResult decode_set(const Integer& code, CodeKind kind, const TruncatedBaire& space,
                               const TruncatedBaire::Point& point) {
  if (code < 1) throw std::invalid_argument("codes are positive integers");
  if (!space.contains(point)) throw std::invalid_argument("point outside the truncated space");
  DecodeResult r;
  switch (kind) {
    case CodeKind::Sprime: r.member = detail::decode_sprime(code, space, point, r); break;
    case CodeKind::Scap: r.member = detail::decode_scap(code, space, point, r); break;
    case CodeKind::A: r.member = detail::decode_a(code, space, point, r); break;
  }
  return r;
}

/// The finite part of g that the stratified decode reads: A-codes g(2), g(3), …
/// at a leaf (unlisted ones repeat the last), and g^{[n]} per child at a node.
struct CodeTree {
  std::vector<Integer> codes;
  std::vector<CodeTree> children;
};

class missing_code : public std::invalid_argument {
 public:
  explicit missing_code(const std::string& path) : std::invalid_argument("no code supplied for child path " + path) {}
};

enum class Stratum { Pi, Sigma };

namespace detail {

inline bool decode_strat(const Stump& s, const CodeTree& g, Stratum kind, const TruncatedBaire& space,
                         const TruncatedBaire::Point& p, std::size_t cap, const std::string& path, DecodeResult& meta) {
  if (s.leaf) {
    // g(n) for n ≥ 2 is an infinite family; listed codes cover it once the
    // last one is taken to repeat.
    if (g.codes.empty()) {
      meta.flag("leaf at " + path + " has no codes: empty set");
      return false;
    }
    bool in = kind == Stratum::Pi;
    for (const auto& c : g.codes) {
      bool here = decode_a(c, space, p, meta);
      in = kind == Stratum::Pi ? (in && here) : (in || here);
    }
    return in;
  }
  meta.truncated = true;
  const Stratum dual = kind == Stratum::Pi ? Stratum::Sigma : Stratum::Pi;
  const Stump leaf = Stump::make_leaf();
  bool in = kind == Stratum::Pi;
  for (std::size_t n = 1; n <= cap; ++n) {
    std::string child_path = path + "/" + std::to_string(n);
    if (n > g.children.size()) throw missing_code(child_path);
    const Stump& child = n <= s.children.size() ? s.children[n - 1] : leaf;
    bool here = decode_strat(child, g.children[n - 1], dual, space, p, cap, child_path, meta);
    in = kind == Stratum::Pi ? (in && here) : (in || here);
  }
  return in;
}

}  // namespace detail

/// ⟦g⟧^Π_f / ⟦g⟧^Σ_f at `point`, with every node's infinite meet or join cut
/// to its first `child_cap` children (recorded in the result).
inline DecodeResult decode_stratified(const Stump& s, const CodeTree& g, Stratum kind, const TruncatedBaire& space,
                                      const TruncatedBaire::Point& point, std::size_t child_cap) {
  if (!space.contains(point)) throw std::invalid_argument("point outside the truncated space");
  DecodeResult r;
  r.member = detail::decode_strat(s, g, kind, space, point, child_cap, "", r);
  return r;
}

}  // namespace lval
