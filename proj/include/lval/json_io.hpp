#pragma once

#include <nlohmann/json.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lval/borel.hpp"
#include "lval/errors.hpp"
#include "lval/fubini.hpp"
#include "lval/group.hpp"
#include "lval/interval_set.hpp"
#include "lval/lattice.hpp"
#include "lval/seq_template.hpp"
#include "lval/sequences.hpp"
#include "lval/step_function.hpp"

namespace lval {

using json = nlohmann::json;

/// Schema violation, located by a JSON pointer into the offending document.
class input_error : public std::invalid_argument {
 public:
  input_error(std::string pointer, const std::string& what)
      : std::invalid_argument((pointer.empty() ? std::string("/") : pointer) + ": " + what), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("", "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw input_error("", path + " is not valid JSON: " + e.what());
  }
}

namespace jio {

inline std::string at(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
inline std::string at(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

inline const json& field(const json& j, const std::string& key, const std::string& ptr) {
  if (!j.is_object()) throw input_error(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw input_error(at(ptr, key), "missing required field");
  return *it;
}

inline const json& array(const json& j, const std::string& ptr) {
  if (!j.is_array()) throw input_error(ptr, "expected an array");
  return j;
}

inline void only_keys(const json& j, const std::vector<std::string>& allowed, const std::string& ptr) {
  if (!j.is_object()) throw input_error(ptr, "expected an object");
  for (const auto& [k, v] : j.items())
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) throw input_error(at(ptr, k), "unknown field");
}

inline bool boolean(const json& j, const std::string& key, bool fallback, const std::string& ptr) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_boolean()) throw input_error(at(ptr, key), "expected true or false");
  return it->get<bool>();
}

inline Rational rational(const json& j, const std::string& ptr) {
  try {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
  } catch (const parse_error& e) {
    throw input_error(ptr, e.what());
  }
  throw input_error(ptr, "expected a rational as \"p/q\" or an integer");
}

inline Integer integer(const json& j, const std::string& ptr) {
  try {
    if (j.is_string()) return Integer(j.get<std::string>());
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    if (j.is_number_integer()) return Integer(j.get<long long>());
  } catch (const std::runtime_error&) {
  }
  throw input_error(ptr, "expected an integer (number or decimal string)");
}

}  // namespace jio

inline json to_json(const Rational& r) { return r.str(); }

// ---- interval sets --------------------------------------------------------

inline Interval interval_from_json(const json& j, const std::string& ptr) {
  jio::only_keys(j, {"lo", "hi", "lo_closed", "hi_closed", "value"}, ptr);
  Interval iv{jio::rational(jio::field(j, "lo", ptr), jio::at(ptr, "lo")), jio::boolean(j, "lo_closed", true, ptr),
              jio::rational(jio::field(j, "hi", ptr), jio::at(ptr, "hi")), jio::boolean(j, "hi_closed", true, ptr)};
  if (iv.hi < iv.lo) throw input_error(jio::at(ptr, "hi"), "hi is below lo");
  return iv;
}

/// [{"lo":"0","hi":"1","lo_closed":true,"hi_closed":false}, …]
inline IntervalSet interval_set_from_json(const json& j, const std::string& ptr = "") {
  std::vector<Interval> raw;
  const json& arr = jio::array(j, ptr);
  for (std::size_t i = 0; i < arr.size(); ++i) raw.push_back(interval_from_json(arr[i], jio::at(ptr, i)));
  return IntervalSet::make(raw);
}

inline json to_json(const IntervalSet& a) {
  json out = json::array();
  for (const auto& p : a.pieces())
    out.push_back({{"lo", p.lo.str()}, {"hi", p.hi.str()}, {"lo_closed", p.lo_closed}, {"hi_closed", p.hi_closed}});
  return out;
}

// ---- step functions -------------------------------------------------------

/// Either the canonical form {"breakpoints","open_values","point_values"} or
/// {"parts":[{lo,hi,lo_closed,hi_closed,value}], "points":[{"at","value"}]}.
inline StepFn step_fn_from_json(const json& j, const std::string& ptr = "") {
  if (!j.is_object()) throw input_error(ptr, "expected a step function object");
  if (j.contains("breakpoints")) {
    jio::only_keys(j, {"breakpoints", "open_values", "point_values"}, ptr);
    auto list = [&](const std::string& key) {
      std::vector<Rational> out;
      const json& arr = jio::array(jio::field(j, key, ptr), jio::at(ptr, key));
      for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(jio::rational(arr[i], jio::at(jio::at(ptr, key), i)));
      return out;
    };
    try {
      return StepFn::from_parts(list("breakpoints"), list("open_values"), list("point_values"));
    } catch (const std::invalid_argument& e) {
      if (dynamic_cast<const input_error*>(&e)) throw;
      throw input_error(ptr, e.what());
    }
  }
  jio::only_keys(j, {"parts", "points"}, ptr);
  std::vector<StepPart> parts;
  std::vector<PointAssignment> points;
  if (j.contains("parts")) {
    const json& arr = jio::array(j["parts"], jio::at(ptr, "parts"));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string p = jio::at(jio::at(ptr, "parts"), i);
      parts.push_back({interval_from_json(arr[i], p), jio::rational(jio::field(arr[i], "value", p), jio::at(p, "value"))});
    }
  }
  if (j.contains("points")) {
    const json& arr = jio::array(j["points"], jio::at(ptr, "points"));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string p = jio::at(jio::at(ptr, "points"), i);
      jio::only_keys(arr[i], {"at", "value"}, p);
      points.push_back({jio::rational(jio::field(arr[i], "at", p), jio::at(p, "at")),
                        jio::rational(jio::field(arr[i], "value", p), jio::at(p, "value"))});
    }
  }
  try {
    return step_make(parts, points);
  } catch (const std::invalid_argument& e) {
    throw input_error(jio::at(ptr, "points"), e.what());
  }
}

inline json to_json(const StepFn& f) {
  json bps = json::array(), open = json::array(), point = json::array();
  for (const auto& x : f.breakpoints()) bps.push_back(x.str());
  for (const auto& x : f.open_values()) open.push_back(x.str());
  for (const auto& x : f.point_values()) point.push_back(x.str());
  return {{"breakpoints", bps}, {"open_values", open}, {"point_values", point}};
}

// ---- planar step functions ------------------------------------------------

/// {"terms":[{"coefficient":"2","x":IntervalSet,"y":IntervalSet}, …]}
inline std::vector<RectTerm> rect_terms_from_json(const json& j, const std::string& ptr = "") {
  jio::only_keys(j, {"terms"}, ptr);
  const json& arr = jio::array(jio::field(j, "terms", ptr), jio::at(ptr, "terms"));
  std::vector<RectTerm> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string p = jio::at(jio::at(ptr, "terms"), i);
    jio::only_keys(arr[i], {"coefficient", "x", "y"}, p);
    out.push_back({jio::rational(jio::field(arr[i], "coefficient", p), jio::at(p, "coefficient")),
                   interval_set_from_json(jio::field(arr[i], "x", p), jio::at(p, "x")),
                   interval_set_from_json(jio::field(arr[i], "y", p), jio::at(p, "y"))});
  }
  return out;
}

// ---- finite lattices and valuations ---------------------------------------

/// {"carrier":["0","a",…], "leq":[["0","a"], …]}
inline FiniteLattice finite_lattice_from_json(const json& j, const std::string& ptr = "") {
  const json& carrier = jio::array(jio::field(j, "carrier", ptr), jio::at(ptr, "carrier"));
  const json& leq = jio::array(jio::field(j, "leq", ptr), jio::at(ptr, "leq"));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < carrier.size(); ++i) {
    if (!carrier[i].is_string()) throw input_error(jio::at(jio::at(ptr, "carrier"), i), "labels are strings");
    labels.push_back(carrier[i].get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < leq.size(); ++i) {
    std::string p = jio::at(jio::at(ptr, "leq"), i);
    if (!leq[i].is_array() || leq[i].size() != 2 || !leq[i][0].is_string() || !leq[i][1].is_string())
      throw input_error(p, "order pairs look like [\"a\", \"b\"]");
    auto a = leq[i][0].get<std::string>(), b = leq[i][1].get<std::string>();
    if (std::find(labels.begin(), labels.end(), a) == labels.end()) throw input_error(jio::at(p, "0"), "unknown element " + a);
    if (std::find(labels.begin(), labels.end(), b) == labels.end()) throw input_error(jio::at(p, "1"), "unknown element " + b);
    pairs.emplace_back(a, b);
  }
  try {
    return FiniteLattice::build(labels, pairs);
  } catch (const std::invalid_argument& e) {
    throw input_error(jio::at(ptr, "leq"), e.what());
  }
}

/// Group values: rationals as "p/q", lexicographic pairs as "(a, b)", DivPos
/// as {"divpos":"2^2·3"}.
inline GroupElem group_elem_from_json(const json& j, const std::string& ptr) {
  try {
    if (j.is_object() && j.contains("divpos")) return DivPos::parse(j["divpos"].get<std::string>());
    if (j.is_string() && !j.get<std::string>().empty() && j.get<std::string>().front() == '(')
      return LexPair::parse(j.get<std::string>());
  } catch (const parse_error& e) {
    throw input_error(ptr, e.what());
  }
  return jio::rational(j, ptr);
}

inline json to_json(const GroupElem& g) {
  if (g.kind() == GroupKind::rational) return g.as_rational().str();
  return g.str();
}

/// {"carrier", "leq", "values": {"label": value, …}}
inline Valuation<FiniteLattice> finite_valuation_from_json(const json& j, const std::string& name,
                                                           const std::string& ptr = "") {
  jio::only_keys(j, {"carrier", "leq", "values"}, ptr);
  FiniteLattice l = finite_lattice_from_json(j, ptr);
  const json& vals = jio::field(j, "values", ptr);
  if (!vals.is_object()) throw input_error(jio::at(ptr, "values"), "expected an object from labels to values");
  std::vector<GroupElem> table;
  for (std::size_t i = 0; i < l.size(); ++i) {
    auto it = vals.find(l.label(i));
    if (it == vals.end()) throw input_error(jio::at(jio::at(ptr, "values"), l.label(i)), "missing value");
    table.push_back(group_elem_from_json(*it, jio::at(jio::at(ptr, "values"), l.label(i))));
  }
  for (const auto& [k, v] : vals.items())
    if (std::find(l.labels().begin(), l.labels().end(), k) == l.labels().end())
      throw input_error(jio::at(jio::at(ptr, "values"), k), "not an element of the carrier");
  return tabulated_valuation(name, l, table);
}

// ---- stumps and code trees ------------------------------------------------

/// {"leaf":true} or {"node":[child, …]}
inline Stump stump_from_json(const json& j, const std::string& ptr = "") {
  if (!j.is_object()) throw input_error(ptr, "expected {\"leaf\":true} or {\"node\":[…]}");
  if (j.contains("node")) {
    jio::only_keys(j, {"node"}, ptr);
    const json& arr = jio::array(j["node"], jio::at(ptr, "node"));
    std::vector<Stump> kids;
    for (std::size_t i = 0; i < arr.size(); ++i) kids.push_back(stump_from_json(arr[i], jio::at(jio::at(ptr, "node"), i)));
    return Stump::node(std::move(kids));
  }
  jio::only_keys(j, {"leaf"}, ptr);
  if (!jio::boolean(j, "leaf", false, ptr)) throw input_error(jio::at(ptr, "leaf"), "expected \"leaf\": true");
  return Stump::make_leaf();
}

inline json to_json(const Stump& s) {
  if (s.leaf) return {{"leaf", true}};
  json kids = json::array();
  for (const auto& c : s.children) kids.push_back(to_json(c));
  return {{"node", kids}};
}

/// {"codes":[k, …]} at leaves, {"children":[tree, …]} at nodes.
inline CodeTree code_tree_from_json(const json& j, const std::string& ptr = "") {
  jio::only_keys(j, {"codes", "children"}, ptr);
  CodeTree t;
  if (j.contains("codes")) {
    const json& arr = jio::array(j["codes"], jio::at(ptr, "codes"));
    for (std::size_t i = 0; i < arr.size(); ++i) t.codes.push_back(jio::integer(arr[i], jio::at(jio::at(ptr, "codes"), i)));
  }
  if (j.contains("children")) {
    const json& arr = jio::array(j["children"], jio::at(ptr, "children"));
    for (std::size_t i = 0; i < arr.size(); ++i)
      t.children.push_back(code_tree_from_json(arr[i], jio::at(jio::at(ptr, "children"), i)));
  }
  return t;
}

// ---- sequences ------------------------------------------------------------

/**
 * The sequence DSL. Interval sequences:
 *   {"kind":"interval","template":"[0, 1 + 1/n]"}
 *   {"kind":"interval","stages":[IntervalSet, …]}        (last stage repeats)
 * Step-function sequences:
 *   {"kind":"step","terms":[{"coef":"1/n","set":"[0, 1]"}, …]}
 *   {"kind":"step","stages":[StepFn, …]}
 * Optional: "direction": "decreasing" | "increasing" and
 * "modulus": "inverse" (ε ↦ ⌈1/ε⌉) | "constant" (ε ↦ 1).
 */
template <class E>
struct SequenceSpec {
  std::function<E(std::size_t)> producer;
  std::optional<Direction> direction;
  std::optional<Modulus> modulus;
  std::string description;
};

namespace detail {

inline void sequence_options(const json& j, const std::string& ptr, std::optional<Direction>& dir,
                             std::optional<Modulus>& mod) {
  if (j.contains("direction")) {
    const auto& d = j["direction"];
    if (d == "decreasing") dir = Direction::decreasing;
    else if (d == "increasing") dir = Direction::increasing;
    else throw input_error(jio::at(ptr, "direction"), "expected \"decreasing\" or \"increasing\"");
  }
  if (j.contains("modulus")) {
    const auto& m = j["modulus"];
    if (m == "inverse") mod = Modulus(inverse_modulus);
    else if (m == "constant") mod = Modulus([](const Rational&) { return std::size_t{1}; });
    else throw input_error(jio::at(ptr, "modulus"), "expected \"inverse\" or \"constant\"");
  }
}

template <class E, class F>
std::function<E(std::size_t)> stage_list(const json& j, const std::string& ptr, F parse) {
  const json& arr = jio::array(j["stages"], jio::at(ptr, "stages"));
  if (arr.empty()) throw input_error(jio::at(ptr, "stages"), "need at least one stage");
  std::vector<E> stages;
  for (std::size_t i = 0; i < arr.size(); ++i) stages.push_back(parse(arr[i], jio::at(jio::at(ptr, "stages"), i)));
  return [stages](std::size_t n) { return stages[std::min(n, stages.size()) - 1]; };
}

}  // namespace detail

inline SequenceSpec<IntervalSet> interval_sequence_from_json(const json& j, const std::string& ptr = "") {
  jio::only_keys(j, {"kind", "template", "stages", "direction", "modulus"}, ptr);
  if (jio::field(j, "kind", ptr) != "interval") throw input_error(jio::at(ptr, "kind"), "expected \"interval\"");
  SequenceSpec<IntervalSet> s;
  detail::sequence_options(j, ptr, s.direction, s.modulus);
  if (j.contains("template")) {
    if (!j["template"].is_string()) throw input_error(jio::at(ptr, "template"), "expected a string");
    try {
      auto t = IntervalTemplate::parse(j["template"].get<std::string>());
      s.producer = [t](std::size_t n) { return t.at(n); };
      s.description = t.str();
    } catch (const parse_error& e) {
      throw input_error(jio::at(ptr, "template"), e.what());
    }
  } else if (j.contains("stages")) {
    s.producer = detail::stage_list<IntervalSet>(j, ptr, [](const json& x, const std::string& p) {
      return interval_set_from_json(x, p);
    });
    s.description = "explicit stages";
  } else {
    throw input_error(jio::at(ptr, "template"), "need \"template\" or \"stages\"");
  }
  return s;
}

inline SequenceSpec<StepFn> step_sequence_from_json(const json& j, const std::string& ptr = "") {
  jio::only_keys(j, {"kind", "terms", "stages", "direction", "modulus"}, ptr);
  if (jio::field(j, "kind", ptr) != "step") throw input_error(jio::at(ptr, "kind"), "expected \"step\"");
  SequenceSpec<StepFn> s;
  detail::sequence_options(j, ptr, s.direction, s.modulus);
  if (j.contains("terms")) {
    const json& arr = jio::array(j["terms"], jio::at(ptr, "terms"));
    std::vector<std::pair<NExpr, IntervalTemplate>> terms;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string p = jio::at(jio::at(ptr, "terms"), i);
      jio::only_keys(arr[i], {"coef", "set"}, p);
      const json& c = jio::field(arr[i], "coef", p);
      const json& set = jio::field(arr[i], "set", p);
      if (!c.is_string()) throw input_error(jio::at(p, "coef"), "expected an expression in n");
      if (!set.is_string()) throw input_error(jio::at(p, "set"), "expected an interval template");
      try {
        terms.emplace_back(NExpr::parse(c.get<std::string>()), IntervalTemplate::parse(set.get<std::string>()));
      } catch (const parse_error& e) {
        throw input_error(p, e.what());
      }
      s.description += (i ? " + " : "") + ("(" + c.get<std::string>() + ")*1" + set.get<std::string>());
    }
    s.producer = [terms](std::size_t n) {
      StepFn f;
      for (const auto& [coef, set] : terms) f = f + indicator(set.at(n), coef.eval(Rational(static_cast<long long>(n))));
      return f;
    };
  } else if (j.contains("stages")) {
    s.producer = detail::stage_list<StepFn>(j, ptr, [](const json& x, const std::string& p) { return step_fn_from_json(x, p); });
    s.description = "explicit stages";
  } else {
    throw input_error(jio::at(ptr, "terms"), "need \"terms\" or \"stages\"");
  }
  return s;
}

}  // namespace lval
