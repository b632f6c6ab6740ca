#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "lval/lval.hpp"

using namespace lval;

namespace {

struct Common {
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  std::size_t depth = 20;
  std::string tol = "1/1000000";
  std::string out;
  std::string format = "json";
};

/// A property failure: the document is still emitted, the exit status is 1.
struct Emitted {
  std::string text;
  bool ok = true;
};

Emitted emit_json(const json& j, bool ok = true) { return {j.dump(2) + "\n", ok}; }

Rational parse_tol(const std::string& s) {
  try {
    Rational r = Rational::parse(s);
    if (r.sign() < 0) throw input_error("--tol", "tolerance must be non-negative");
    return r;
  } catch (const parse_error& e) {
    throw input_error("--tol", e.what());
  }
}

void require_json(const Common& c, const std::string& cmd) {
  if (c.format != "json") throw input_error("--format", cmd + " only writes json");
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

json check_document(const std::string& name, const CheckReport& r) {
  return {{"check", name}, {"passed", r.passed()}, {"properties", r.to_json()}};
}

// ---- measure / integrate / distance / approx-eq ---------------------------

Emitted cmd_measure(const Common& c, const std::string& path) {
  require_json(c, "measure");
  return emit_json({{"value", mu_S(interval_set_from_json(read_json_file(path))).str()}});
}

Emitted cmd_integrate(const Common& c, const std::string& path) {
  require_json(c, "integrate");
  return emit_json({{"value", phi_S(step_fn_from_json(read_json_file(path))).str()}});
}

/// An interval set is a JSON array, a step function an object.
template <class F>
Emitted on_pair(const std::string& pa, const std::string& pb, F f) {
  json a = read_json_file(pa), b = read_json_file(pb);
  if (a.is_array() != b.is_array())
    throw input_error("", "both inputs must be interval sets (arrays) or both step functions (objects)");
  if (a.is_array()) return f(mu_S_valuation(), interval_set_from_json(a), interval_set_from_json(b));
  return f(phi_S_valuation(), step_fn_from_json(a), step_fn_from_json(b));
}

Emitted cmd_distance(const Common& c, const std::string& pa, const std::string& pb) {
  require_json(c, "distance");
  return on_pair(pa, pb, [](const auto& phi, const auto& a, const auto& b) {
    return emit_json({{"valuation", phi.name()}, {"distance", to_json(dist(phi, a, b))}});
  });
}

Emitted cmd_approx_eq(const Common& c, const std::string& pa, const std::string& pb) {
  require_json(c, "approx-eq");
  return on_pair(pa, pb, [](const auto& phi, const auto& a, const auto& b) {
    return emit_json({{"valuation", phi.name()},
                      {"approx_equal", approx_equal(phi, a, b)},
                      {"distance", to_json(dist(phi, a, b))}});
  });
}

// ---- quotient ------------------------------------------------------------

Emitted cmd_quotient(const Common& c, const std::string& path) {
  require_json(c, "quotient");
  auto phi = finite_valuation_from_json(read_json_file(path), "phi");
  const auto& l = phi.lattice();
  Quotient q;
  try {
    q = quotient(phi);
  } catch (const contract_violation& e) {
    CheckReport input = check_valuation_exhaustive(phi);
    return emit_json({{"error", e.what()}, {"input_check", input.to_json()}}, false);
  }
  json classes = json::array();
  for (std::size_t x = 0; x < q.members.size(); ++x) {
    json members = json::array();
    for (auto a : q.members[x]) members.push_back(l.label(a));
    classes.push_back({{"label", q.lattice.label(x)}, {"members", members}, {"value", to_json(q.values[x])}});
  }
  json order = json::array();
  for (std::size_t x = 0; x < q.lattice.size(); ++x)
    for (std::size_t y = 0; y < q.lattice.size(); ++y)
      if (x != y && q.lattice.leq(x, y)) order.push_back({q.lattice.label(x), q.lattice.label(y)});

  auto induced = q.valuation("phi/~");
  CheckReport report = check_valuation_exhaustive(induced);
  for (std::size_t x = 0; x < q.lattice.size(); ++x)
    for (std::size_t y = 0; y < q.lattice.size(); ++y)
      report.record("hausdorff", x == y || !approx_equal(induced, x, y),
                    [&] { return q.lattice.label(x) + " ~ " + q.lattice.label(y); });
  return emit_json({{"classes", classes}, {"leq", order}, {"report", report.to_json()}}, report.passed());
}

// ---- sequences ------------------------------------------------------------

template <Lattice L>
Emitted converge_trace(const Common& c, const Valuation<L>& phi,
                       const std::function<typename L::element_type(std::size_t)>& seq,
                       const std::string& theorem, const std::optional<typename L::element_type>& limit,
                       const std::optional<std::pair<typename L::element_type, typename L::element_type>>& bounds) {
  if (c.depth < 2) throw input_error("--depth", "converge-trace needs depth ≥ 2");
  const L& l = phi.lattice();
  json rows = json::array();
  std::string csv = "stage,phi,running_meet,running_join\n";
  auto lo = seq(1), hi = seq(1);
  for (std::size_t n = 1; n <= c.depth; ++n) {
    auto a = seq(n);
    if (n > 1) {
      lo = l.meet(lo, a);
      hi = l.join(hi, a);
    }
    std::string v = phi(a).str(), m = phi(lo).str(), j = phi(hi).str();
    rows.push_back({{"stage", n}, {"phi", v}, {"running_meet", m}, {"running_join", j}});
    csv += std::to_string(n) + "," + csv_escape(v) + "," + csv_escape(m) + "," + csv_escape(j) + "\n";
  }
  auto lim = phi_limits_at_depth<L>(phi, seq, c.depth);
  json doc = {{"valuation", phi.name()},
              {"depth", c.depth},
              {"stages", rows},
              {"pulim_at_depth", to_json(lim.pulim)},
              {"pllim_at_depth", to_json(lim.pllim)}};
  bool ok = true;
  if (!theorem.empty()) {
    ConvergenceTheorem kind = theorem == "fatou" ? ConvergenceTheorem::fatou : ConvergenceTheorem::dct;
    CheckReport r = convergence_theorem_check<L>(kind, phi, seq, bounds, limit, c.depth, parse_tol(c.tol));
    doc["theorem"] = check_document(theorem, r);
    ok = r.passed();
  }
  if (c.format == "csv") return {csv, ok};
  return emit_json(doc, ok);
}

struct TraceArgs {
  std::string seq, theorem, limit, lower, upper;
};

Emitted cmd_converge_trace(const Common& c, const TraceArgs& t) {
  json spec = read_json_file(t.seq);
  if (!t.theorem.empty() && t.theorem != "fatou" && t.theorem != "dct")
    throw input_error("--theorem", "expected fatou or dct");
  if (!t.theorem.empty() && t.limit.empty())
    throw input_error("--limit", "the limit element is not stage-computable here; supply it with --limit");
  if (t.theorem == "dct" && (t.lower.empty() || t.upper.empty()))
    throw input_error("--lower", "dominated convergence needs --lower and --upper");
  const std::string kind = spec.is_object() && spec.contains("kind") && spec["kind"].is_string() ? spec["kind"].get<std::string>() : "";
  if (kind == "interval") {
    auto s = interval_sequence_from_json(spec);
    std::optional<IntervalSet> limit;
    std::optional<std::pair<IntervalSet, IntervalSet>> bounds;
    if (!t.limit.empty()) limit = interval_set_from_json(read_json_file(t.limit));
    if (!t.lower.empty() && !t.upper.empty())
      bounds = std::make_pair(interval_set_from_json(read_json_file(t.lower)), interval_set_from_json(read_json_file(t.upper)));
    return converge_trace<IntervalSetLattice>(c, mu_S_valuation(), s.producer, t.theorem, limit, bounds);
  }
  if (kind == "step") {
    auto s = step_sequence_from_json(spec);
    std::optional<StepFn> limit;
    std::optional<std::pair<StepFn, StepFn>> bounds;
    if (!t.limit.empty()) limit = step_fn_from_json(read_json_file(t.limit));
    if (!t.lower.empty() && !t.upper.empty())
      bounds = std::make_pair(step_fn_from_json(read_json_file(t.lower)), step_fn_from_json(read_json_file(t.upper)));
    return converge_trace<StepFnLattice>(c, phi_S_valuation(), s.producer, t.theorem, limit, bounds);
  }
  throw input_error("/kind", "expected \"interval\" or \"step\"");
}

Emitted cmd_sqrt2(const Common& c, std::int64_t max_den) {
  if (c.depth < 1) throw input_error("--depth", "depth must be at least 1");
  auto w = sqrt2_witness(c.depth, max_den, parse_tol(c.tol));
  bool ok = w.q_strictly_increasing && w.q_below_sqrt2 && w.gap_decreasing && w.union_measure_is_q &&
            w.b_measure_is_q_minus_r && w.rational_roots_found == 0;
  if (c.format == "csv") {
    std::string csv = "stage,q,r,mu_A,mu_B,mu_AB,gap\n";
    for (const auto& s : w.stages)
      csv += std::to_string(s.n) + "," + s.q.str() + "," + s.r.str() + "," + s.mu_A.str() + "," + s.mu_B.str() + "," +
             s.mu_AB.str() + "," + s.gap.str() + "\n";
    return {csv, ok};
  }
  json stages = json::array();
  for (const auto& s : w.stages)
    stages.push_back({{"stage", s.n},
                      {"q", s.q.str()},
                      {"r", s.r.str()},
                      {"mu_A", s.mu_A.str()},
                      {"mu_B", s.mu_B.str()},
                      {"mu_AB", s.mu_AB.str()},
                      {"gap", s.gap.str()}});
  return emit_json({{"stages", stages},
                    {"q_strictly_increasing", w.q_strictly_increasing},
                    {"q_below_sqrt2", w.q_below_sqrt2},
                    {"gap_decreasing", w.gap_decreasing},
                    {"union_measure_is_q", w.union_measure_is_q},
                    {"b_measure_is_q_minus_r", w.b_measure_is_q_minus_r},
                    {"scan", {{"max_denominator", max_den}, {"radius", parse_tol(c.tol).str()},
                              {"candidates", w.scanned_candidates}, {"rational_roots", w.rational_roots_found}}}},
                   ok);
}

// ---- uniformity -----------------------------------------------------------

Emitted cmd_dense_approx(const Common& c, const std::string& seq_path, const std::string& oracle_name,
                         std::size_t eps_index) {
  if (oracle_name != "dyadic-endpoints") throw input_error("--oracle", "known oracles: dyadic-endpoints");
  if (eps_index < 1) throw input_error("--eps-index", "ε-index must be at least 1");
  if (c.depth < 1) throw input_error("--depth", "depth must be at least 1");
  auto spec = interval_sequence_from_json(read_json_file(seq_path));
  if (spec.direction && *spec.direction != Direction::decreasing)
    throw input_error("/direction", "dense approximation needs a decreasing sequence");
  MonoSeq<IntervalSetLattice> seq = [&] {
    try {
      return MonoSeq<IntervalSetLattice>::make(Direction::decreasing, IntervalSetLattice{}, spec.producer,
                                               spec.modulus.value_or(Modulus(inverse_modulus)), "mu_S", c.depth);
    } catch (const monotonicity_violation& e) {
      throw input_error("", e.what());
    }
  }();
  auto out = dense_approximate(mu_S_valuation(), dyadic_endpoint_oracle(), seq, eps_index, c.depth);
  if (c.format == "csv") {
    std::string csv = "stage,phi_a,phi_atilde,bound\n";
    for (const auto& s : out.stages)
      csv += std::to_string(s.n) + "," + s.phi_a.str() + "," + s.phi_atilde.str() + "," + s.bound.str() + "\n";
    return {csv, out.report.passed()};
  }
  json stages = json::array();
  for (const auto& s : out.stages) {
    stages.push_back({{"stage", s.n},
                      {"phi_a", s.phi_a.str()},
                      {"phi_atilde", s.phi_atilde.str()},
                      {"bound", s.bound.str()},
                      {"atilde", to_json(out.approx.at(s.n))}});
  }
  return emit_json({{"oracle", oracle_name},
                    {"eps_index", eps_index},
                    {"eps", Rational::pow2(-static_cast<long>(eps_index)).str()},
                    {"stages", stages},
                    {"report", out.report.to_json()}},
                   out.report.passed());
}

// ---- fubini -----------------------------------------------------------------

Emitted cmd_fubini(const Common& c, const std::string& path, std::size_t slices) {
  require_json(c, "fubini-check");
  auto f = step2d_make(rect_terms_from_json(read_json_file(path)));
  auto r = fubini_check(f, slices, c.seed);
  json sampled = json::array();
  for (const auto& s : r.slices)
    sampled.push_back({{"y", s.y.str()}, {"partial", s.partial.str()}, {"slice_integral", s.slice_integral.str()}});
  return emit_json({{"lhs", r.lhs.str()},
                    {"rhs", r.rhs.str()},
                    {"lhs_y_first", r.lhs_y.str()},
                    {"equal", r.equal},
                    {"sampled_slices", sampled},
                    {"report", r.report.to_json()}},
                   r.report.passed());
}

// ---- borel ------------------------------------------------------------------

Emitted cmd_stump_alpha(const Common& c, const std::string& path) {
  require_json(c, "stump-alpha");
  auto s = stump_from_json(read_json_file(path));
  return emit_json({{"alpha", stump_alpha(s)}, {"depth", s.depth()}});
}

struct DecodeArgs {
  std::string code, space, point, kind = "a", stump, codes, stratum = "pi";
  std::size_t child_cap = 4;
};

Emitted cmd_borel_decode(const Common& c, const DecodeArgs& d) {
  require_json(c, "borel-decode");
  TruncatedBaire space = [&] {
    try {
      return TruncatedBaire::parse(d.space);
    } catch (const std::invalid_argument& e) {
      throw input_error("--space", e.what());
    }
  }();
  TruncatedBaire::Point point = [&] {
    try {
      return space.parse_point(d.point);
    } catch (const parse_error& e) {
      throw input_error("--point", e.what());
    }
  }();
  json pt = json::array();
  for (auto v : point) pt.push_back(v);
  DecodeResult r;
  json doc = {{"space", d.space}, {"point", pt}};
  if (!d.stump.empty()) {
    if (d.codes.empty()) throw input_error("--codes", "stratified decoding needs a code tree");
    if (d.stratum != "pi" && d.stratum != "sigma") throw input_error("--stratum", "expected pi or sigma");
    auto s = stump_from_json(read_json_file(d.stump));
    auto g = code_tree_from_json(read_json_file(d.codes));
    try {
      r = decode_stratified(s, g, d.stratum == "pi" ? Stratum::Pi : Stratum::Sigma, space, point, d.child_cap);
    } catch (const missing_code& e) {
      throw input_error("--codes", e.what());
    }
    doc["stratum"] = d.stratum;
    doc["child_cap"] = d.child_cap;
  } else {
    if (d.code.empty()) throw input_error("--code", "give --code, or --stump with --codes");
    Integer code;
    try {
      code = Integer(d.code);
    } catch (const std::runtime_error&) {
      throw input_error("--code", "expected a positive integer");
    }
    if (code < 1) throw input_error("--code", "expected a positive integer");
    CodeKind kind;
    if (d.kind == "sprime") kind = CodeKind::Sprime;
    else if (d.kind == "scap") kind = CodeKind::Scap;
    else if (d.kind == "a") kind = CodeKind::A;
    else throw input_error("--kind", "expected sprime, scap or a");
    r = decode_set(code, kind, space, point);
    doc["code"] = d.code;
    doc["kind"] = d.kind;
    json tuple = json::array();
    for (const auto& x : tuple_decode(code)) tuple.push_back(x.str());
    doc["tuple"] = tuple;
  }
  doc["member"] = r.member;
  doc["truncated"] = r.truncated;
  doc["flags"] = r.flags;
  return emit_json(doc);
}

// ---- totient ----------------------------------------------------------------

Emitted cmd_totient_table(const Common& c, std::uint64_t max) {
  if (max < 1) throw input_error("--max", "expected a positive bound");
  if (c.format == "csv") {
    std::string csv = "n,totient\n";
    for (std::uint64_t n = 1; n <= max; ++n) csv += std::to_string(n) + "," + std::to_string(totient(n)) + "\n";
    return {csv, true};
  }
  json rows = json::array();
  for (std::uint64_t n = 1; n <= max; ++n) rows.push_back({{"n", n}, {"totient", totient(n)}});
  return emit_json({{"table", rows}});
}

// ---- check suites -------------------------------------------------------------

CheckReport totient_identity(std::uint64_t max) {
  CheckReport r;
  for (std::uint64_t m = 1; m <= max; ++m)
    for (std::uint64_t n = 1; n <= max; ++n) {
      std::uint64_t g = std::gcd(m, n), l = m / g * n;
      r.record("gcd_lcm_identity", totient(g) * totient(l) == totient(m) * totient(n),
               [&] { return "m=" + std::to_string(m) + " n=" + std::to_string(n); });
    }
  return r;
}

const std::vector<std::string> kSuites{"modularity", "pseudometric", "congruence", "group-axioms",
                                       "uniformity", "totient-identity", "distributivity"};

CheckReport run_suite(const std::string& suite, std::size_t samples, std::uint64_t seed) {
  CheckReport r;
  if (suite == "modularity") {
    r.merge(check_valuation(mu_S_valuation(), interval_set_sampler(), samples, seed), "mu_S/");
    r.merge(check_valuation(phi_S_valuation(), step_fn_sampler(), samples, seed), "phi_S/");
    r.merge(check_valuation(counting_valuation(), subset_sampler(), samples, seed), "counting/");
    r.merge(check_valuation(totient_valuation(), divisor_sampler(500), samples, seed), "totient/");
    r.merge(check_valuation(dimension_valuation(8), gf2_sampler(8), samples, seed), "gf2_dim/");
    r.merge(check_valuation(mu_XY_valuation(), rect_set_sampler(), samples, seed), "mu_XY/");
  } else if (suite == "pseudometric") {
    r.merge(check_pseudometric(mu_S_valuation(), interval_set_sampler(), samples, seed), "mu_S/");
    r.merge(check_pseudometric(phi_S_valuation(), step_fn_sampler(), samples, seed), "phi_S/");
  } else if (suite == "congruence") {
    r.merge(check_congruence<IntervalSetLattice>(mu_S_valuation(), interval_set_sampler(), perturb_null_iset, samples,
                                                 seed),
            "mu_S/");
    r.merge(check_congruence<StepFnLattice>(phi_S_valuation(), step_fn_sampler(), perturb_null_step, samples, seed),
            "phi_S/");
  } else if (suite == "group-axioms") {
    for (const char* g : {"rational", "lex", "divpos", "product:rational,divpos"})
      r.merge(check_group_axioms(g, samples, seed), std::string(g) + "/");
  } else if (suite == "uniformity") {
    r = uniformity_check(dyadic_uniformity(), samples, seed);
  } else if (suite == "totient-identity") {
    r = totient_identity(500);
  } else if (suite == "distributivity") {
    for (const auto& [name, l] : std::vector<std::pair<std::string, FiniteLattice>>{
             {"powerset3", powerset_lattice(3)}, {"chain5", chain_lattice(5)}}) {
      auto d = check_distributive(l);
      r.record(name + "/distributive", d.distributive, [&] { return std::string("witness found"); });
    }
  } else {
    throw input_error("--suite", "unknown suite " + suite);
  }
  return r;
}

Emitted cmd_check(const Common& c, const std::string& suite) {
  require_json(c, "check");
  if (suite == "all") {
    json doc = json::object();
    bool ok = true;
    for (const auto& s : kSuites) {
      auto r = run_suite(s, c.samples, c.seed);
      doc[s] = check_document(s, r);
      ok = ok && r.passed();
    }
    return emit_json({{"seed", c.seed}, {"samples", c.samples}, {"suites", doc}, {"passed", ok}}, ok);
  }
  auto r = run_suite(suite, c.samples, c.seed);
  json doc = check_document(suite, r);
  doc["seed"] = c.seed;
  doc["samples"] = c.samples;
  return emit_json(doc, r.passed());
}

void write_out(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw input_error("--out", "cannot write " + c.out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice valuations: measures, integrals, completions and property checks."};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("--seed", c.seed, "Seed for every sampled check");
  app.add_option("--samples", c.samples, "Number of sampled cases");
  app.add_option("--depth", c.depth, "Truncation depth");
  app.add_option("--tol", c.tol, "Rational tolerance, e.g. 1/1000");
  app.add_option("--out", c.out, "Write output here instead of stdout");
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::function<Emitted()> run;
  std::string path_a, path_b, suite = "all", oracle_name = "dyadic-endpoints";
  std::size_t eps_index = 2, slices = 20;
  std::uint64_t max = 100;
  std::int64_t max_den = 10000;
  TraceArgs trace;
  DecodeArgs decode;

  auto* measure = app.add_subcommand("measure", "mu_S of an interval set");
  measure->add_option("--set", path_a, "Interval set JSON")->required();
  measure->callback([&] { run = [&] { return cmd_measure(c, path_a); }; });

  auto* integrate = app.add_subcommand("integrate", "phi_S of a step function");
  integrate->add_option("--step", path_a, "Step function JSON")->required();
  integrate->callback([&] { run = [&] { return cmd_integrate(c, path_a); }; });

  auto* distance = app.add_subcommand("distance", "d(a, b) = phi(a v b) - phi(a ^ b)");
  distance->add_option("--a", path_a, "Interval set or step function JSON")->required();
  distance->add_option("--b", path_b, "Same kind as --a")->required();
  distance->callback([&] { run = [&] { return cmd_distance(c, path_a, path_b); }; });

  auto* approx = app.add_subcommand("approx-eq", "Whether d(a, b) = 0");
  approx->add_option("--a", path_a, "Interval set or step function JSON")->required();
  approx->add_option("--b", path_b, "Same kind as --a")->required();
  approx->callback([&] { run = [&] { return cmd_approx_eq(c, path_a, path_b); }; });

  auto* quot = app.add_subcommand("quotient", "L/~ of a finite valuation");
  quot->add_option("--valuation", path_a, "{carrier, leq, values} JSON")->required();
  quot->callback([&] { run = [&] { return cmd_quotient(c, path_a); }; });

  auto* conv = app.add_subcommand("converge-trace", "Per-stage values of a sequence, with optional Fatou/DCT check");
  conv->add_option("--seq", trace.seq, "Sequence JSON")->required();
  conv->add_option("--theorem", trace.theorem, "fatou or dct");
  conv->add_option("--limit", trace.limit, "Limit element JSON");
  conv->add_option("--lower", trace.lower, "Lower bound JSON (dct)");
  conv->add_option("--upper", trace.upper, "Upper bound JSON (dct)");
  conv->callback([&] { run = [&] { return cmd_converge_trace(c, trace); }; });

  auto* sqrt2 = app.add_subcommand("sqrt2-witness", "Rational sequences converging to sqrt 2");
  sqrt2->add_option("--max-denominator", max_den, "Denominator bound of the rational-root scan");
  sqrt2->callback([&] { run = [&] { return cmd_sqrt2(c, max_den); }; });

  auto* dense = app.add_subcommand("dense-approx", "Approximate a decreasing sequence from a dense sublattice");
  dense->add_option("--seq", path_a, "Interval sequence JSON")->required();
  dense->add_option("--oracle", oracle_name, "Density oracle");
  dense->add_option("--eps-index", eps_index, "Target tolerance 2^-k");
  dense->callback([&] { run = [&] { return cmd_dense_approx(c, path_a, oracle_name, eps_index); }; });

  auto* fub = app.add_subcommand("fubini-check", "Both integration orders of a planar step function");
  fub->add_option("--terms", path_a, "{terms:[{coefficient, x, y}]} JSON")->required();
  fub->add_option("--slices", slices, "Number of sampled y slices");
  fub->callback([&] { run = [&] { return cmd_fubini(c, path_a, slices); }; });

  auto* alpha = app.add_subcommand("stump-alpha", "Ordinal rank of a stump");
  alpha->add_option("--tree", path_a, "Stump JSON")->required();
  alpha->callback([&] { run = [&] { return cmd_stump_alpha(c, path_a); }; });

  auto* borel = app.add_subcommand("borel-decode", "Membership of a point in a coded set");
  borel->add_option("--code", decode.code, "Set code (positive integer)");
  borel->add_option("--kind", decode.kind, "sprime, scap or a");
  borel->add_option("--space", decode.space, "Truncation DxM")->required();
  borel->add_option("--point", decode.point, "Point as comma-separated values")->required();
  borel->add_option("--stump", decode.stump, "Stump JSON for stratified decoding");
  borel->add_option("--codes", decode.codes, "Code tree JSON for stratified decoding");
  borel->add_option("--stratum", decode.stratum, "pi or sigma");
  borel->add_option("--child-cap", decode.child_cap, "Children read per node");
  borel->callback([&] { run = [&] { return cmd_borel_decode(c, decode); }; });

  auto* tot = app.add_subcommand("totient-table", "Euler totient of 1..max");
  tot->add_option("--max", max, "Largest n");
  tot->callback([&] { run = [&] { return cmd_totient_table(c, max); }; });

  auto* check = app.add_subcommand("check", "Run a named property suite");
  check->add_option("--suite", suite, "modularity, pseudometric, congruence, group-axioms, uniformity, "
                                      "totient-identity, distributivity or all");
  check->callback([&] { run = [&] { return cmd_check(c, suite); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Emitted e = run();
    write_out(c, e.text);
    return e.ok ? 0 : 1;
  } catch (const input_error& e) {
    std::cerr << json({{"error", e.what()}, {"pointer", e.pointer()}}).dump() << "\n";
    return 2;
  } catch (const parse_error& e) {
    std::cerr << json({{"error", e.what()}, {"pointer", ""}}).dump() << "\n";
    return 2;
  } catch (const monotonicity_violation& e) {
    std::cerr << json({{"error", e.what()}, {"pointer", ""}}).dump() << "\n";
    return 2;
  } catch (const contract_violation& e) {
    std::cerr << json({{"error", e.what()}}).dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json({{"error", e.what()}}).dump() << "\n";
    return 2;
  }
}
