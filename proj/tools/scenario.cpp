// Copyright 2026 The desir Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <spdlog/spdlog.h>

#include "desir/consistency.hpp"
#include "desir/credal.hpp"
#include "desir/decide.hpp"
#include "desir/lp.hpp"
#include "desir/previsions.hpp"
#include "desir/probes.hpp"
#include "desir/structure.hpp"

namespace desir::cli {

namespace {

// JSON has no infinities.
json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json vec(const Gamble& g) { return g.vector(); }

json vec(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

std::string fmt_num(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

json bracket(const PrevisionBracket& b) {
  json j{{"lo", num(b.lo)},
         {"hi", num(b.hi)},
         {"value", num(b.value())},
         {"certified", b.certified},
         {"boundary_in", to_string(b.boundary_in)},
         {"method", b.method}};
  if (b.boundary_point) j["boundary_point"] = num(*b.boundary_point);
  if (b.cross_check) j["cross_check"] = num(*b.cross_check);
  return j;
}

const json& need(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ScenarioError(where + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

double need_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ScenarioError(where + ": expected a number");
  return j.get<double>();
}

std::vector<double> need_vector(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array()) throw ScenarioError(where + ": expected an array of numbers");
  std::vector<double> v;
  for (const json& x : j) v.push_back(need_number(x, where));
  if (n != 0 && v.size() != n) {
    throw ScenarioError(where + ": expected " + std::to_string(n) + " values, got " +
                        std::to_string(v.size()));
  }
  return v;
}

ClosureSpec parse_operator(const json& j) {
  std::string kind = need(j, "kind", "operator").get<std::string>();
  json params = j.value("params", json::object());
  ClosureSpec spec;
  if (kind == "kappa1") {
    spec = ClosureSpec::kappa1();
  } else if (kind == "kappa2") {
    spec = ClosureSpec::kappa2(params.value("max_multiplicity", 64));
  } else if (kind == "kappa3") {
    spec = ClosureSpec::kappa3();
  } else if (kind == "kappa4") {
    spec = ClosureSpec::kappa4();
  } else if (kind == "utility-warp") {
    std::string u = need(params, "utility", "operator.params").get<std::string>();
    double a = need_number(need(params, "a", "operator.params"), "operator.params.a");
    if (u == "linear") {
      spec = ClosureSpec::utility_warp(UtilityFn::linear(a));
    } else if (u == "odd-power") {
      spec = ClosureSpec::utility_warp(UtilityFn::odd_power(a));
    } else if (u == "cara") {
      spec = ClosureSpec::utility_warp(UtilityFn::cara(a));
    } else {
      throw ScenarioError("operator.params.utility: unknown utility '" + u + "'");
    }
  } else if (kind == "prevision-induced") {
    std::string f = need(params, "functional", "operator.params").get<std::string>();
    std::vector<double> w = need_vector(need(params, "weights", "operator.params"), 0,
                                        "operator.params.weights");
    if (f == "linear") {
      spec = ClosureSpec::prevision_induced(PriceFunctional::linear(w));
    } else if (f == "owa") {
      spec = ClosureSpec::prevision_induced(PriceFunctional::owa(w));
    } else {
      throw ScenarioError("operator.params.functional: unknown functional '" + f + "'");
    }
  } else if (kind == "neg-limit") {
    spec = ClosureSpec::neg_limit(params.value("k", 1));
  } else {
    throw ScenarioError("operator.kind: unknown kind '" + kind + "'");
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(std::string("operator: ") + e.what());
  }
  return spec;
}

json describe_spec(const ClosureSpec& s) {
  json j{{"kind", to_string(s.kind)}, {"name", s.name()}};
  return j;
}

// Resolves gambles, events and partitions inside one query.
class Context {
 public:
  Context(const Scenario& s, std::string where) : s_(s), where_(std::move(where)) {}

  std::size_t n() const { return s_.space.size(); }

  Gamble gamble(const json& j) const {
    if (j.is_string()) {
      auto it = s_.gambles.find(j.get<std::string>());
      if (it == s_.gambles.end()) {
        throw ScenarioError(where_ + ": unknown gamble '" + j.get<std::string>() + "'");
      }
      return it->second;
    }
    return Gamble(need_vector(j, n(), where_));
  }

  Gamble gamble_arg(const json& args, const char* key) const {
    return gamble(need(args, key, where_));
  }

  std::vector<Gamble> gamble_list(const json& j) const {
    if (!j.is_array()) throw ScenarioError(where_ + ": expected a list of gambles");
    std::vector<Gamble> out;
    for (const json& x : j) out.push_back(gamble(x));
    return out;
  }

  Event event(const json& j) const {
    if (!j.is_array()) throw ScenarioError(where_ + ": an event is a list of outcomes");
    std::vector<bool> m(n(), false);
    for (const json& x : j) m[outcome(x)] = true;
    return Event(std::move(m));
  }

  Partition partition(const json& j) const {
    if (!j.is_array()) throw ScenarioError(where_ + ": a partition is a list of events");
    std::vector<Event> blocks;
    for (const json& b : j) blocks.push_back(event(b));
    try {
      return Partition(std::move(blocks));
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(where_ + ": " + e.what());
    }
  }

 private:
  std::size_t outcome(const json& x) const {
    if (x.is_number_unsigned() || x.is_number_integer()) {
      long i = x.get<long>();
      if (i < 0 || static_cast<std::size_t>(i) >= n()) {
        throw ScenarioError(where_ + ": outcome index out of range");
      }
      return static_cast<std::size_t>(i);
    }
    if (x.is_string()) {
      auto it = std::find(s_.space.begin(), s_.space.end(), x.get<std::string>());
      if (it == s_.space.end()) {
        throw ScenarioError(where_ + ": unknown outcome '" + x.get<std::string>() + "'");
      }
      return static_cast<std::size_t>(it - s_.space.begin());
    }
    throw ScenarioError(where_ + ": outcomes are labels or indices");
  }

  const Scenario& s_;
  std::string where_;
};

struct QueryEnv {
  const Scenario& s;
  const DesirSet& d;
  PrevisionOptions popt;
  std::uint64_t seed;
};

json membership(const Membership& m) {
  json j{{"verdict", to_string(m.verdict)}, {"via", m.via}};
  if (!m.coefficients.empty()) j["coefficients"] = vec(m.coefficients);
  if (m.generator) j["generator"] = *m.generator;
  return j;
}

json loss(const LossVerdict& v) {
  json j{{"verdict", to_string(v.value)}, {"notes", v.notes}};
  if (v.witness) j["witness"] = vec(*v.witness);
  return j;
}

json decision(const DecisionReport& r) {
  json rej = json::array();
  for (const Rejection& x : r.rejected) {
    json e{{"option", x.option}, {"detail", x.detail}};
    if (x.by) e["by"] = *x.by;
    if (x.price) e["price"] = num(*x.price);
    rej.push_back(e);
  }
  return {{"criterion", r.criterion},
          {"available", r.available},
          {"optimal", r.optimal},
          {"rejected", rej},
          {"ties_resolved_by_boundary", r.ties_resolved_by_boundary},
          {"notes", r.notes}};
}

std::string join_indices(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

using Handler = std::function<json(const QueryEnv&, const json&, const Context&)>;

json q_member(const QueryEnv& env, const json& args, const Context& c) {
  Gamble f = c.gamble_arg(args, "gamble");
  json r = membership(env.d.member(f));
  r["gamble"] = vec(f);
  return r;
}

json q_classify(const QueryEnv&, const json& args, const Context& c) {
  Gamble f = c.gamble_arg(args, "gamble");
  return {{"gamble", vec(f)}, {"verdict", to_string(classify(f))}};
}

json q_apl(const QueryEnv& env, const json&, const Context&) {
  return loss(avoids_partial_loss(env.d));
}

json q_asl(const QueryEnv& env, const json&, const Context&) {
  return loss(avoids_sure_loss(env.d));
}

json q_coherent(const QueryEnv& env, const json& args, const Context&) {
  CoherenceReport r = is_coherent(env.d, args.value("trials", 500), env.seed);
  return {{"verdict", to_string(r.value)}, {"method", r.method}, {"failures", r.failures}};
}

json q_lower(const QueryEnv& env, const json& args, const Context& c) {
  Gamble f = c.gamble_arg(args, "gamble");
  json r = bracket(lower_prevision(env.d, f, env.popt));
  r["gamble"] = vec(f);
  return r;
}

json q_upper(const QueryEnv& env, const json& args, const Context& c) {
  Gamble f = c.gamble_arg(args, "gamble");
  json r = bracket(upper_prevision(env.d, f, env.popt));
  r["gamble"] = vec(f);
  return r;
}

json q_precise(const QueryEnv& env, const json& args, const Context&) {
  PrecisionResult p = is_precise(env.d, args.value("samples", 1000), env.seed, env.popt);
  json r{{"verdict", to_string(p.value)},
         {"tested", p.tested},
         {"unknowns", p.unknowns},
         {"notes", p.notes}};
  if (p.counterexample) {
    r["counterexample"] = vec(*p.counterexample);
    r["lower"] = num(p.lower);
    r["upper"] = num(p.upper);
  }
  return r;
}

json q_gbr(const QueryEnv& env, const json& args, const Context& c) {
  Gamble f = c.gamble_arg(args, "gamble");
  Event b = c.event(need(args, "event", "gbr"));
  GbrResult g = gbr_conditional(env.d, f, b, env.popt);
  return {{"gamble", vec(f)},
          {"event", b.indices()},
          {"lower_b", bracket(g.lower_b)},
          {"gbr_branch", g.gbr_branch},
          {"gbr", bracket(g.gbr)},
          {"member_sup", bracket(g.member_sup)},
          {"weak_sup", bracket(g.weak_sup)},
          {"sandwich_holds", g.sandwich_holds},
          {"verdict", g.sandwich_holds ? "sandwich-holds" : "sandwich-fails"},
          {"lo", num(g.gbr.value())},
          {"hi", num(g.weak_sup.value())}};
}

json q_marginal(const QueryEnv& env, const json& args, const Context& c) {
  Gamble f = c.gamble_arg(args, "gamble");
  Partition p = c.partition(need(args, "partition", "marginal"));
  json r = membership(marginal_member(env.d, f, p));
  r["gamble"] = vec(f);
  return r;
}

json q_conditional(const QueryEnv& env, const json& args, const Context& c) {
  Gamble f = c.gamble_arg(args, "gamble");
  Event b = c.event(need(args, "event", "conditional"));
  if (b.empty()) throw ScenarioError("conditional: empty event");
  json r = membership(conditional_member(env.d, f, b));
  r["gamble"] = vec(f);
  r["event"] = b.indices();
  return r;
}

json q_assemble(const QueryEnv& env, const json& args, const Context& c) {
  Gamble f = c.gamble_arg(args, "gamble");
  Partition p = c.partition(need(args, "partition", "assemble"));
  json r = membership(assembled_member(ConditionalFamily::from_set(env.d, p), f));
  r["gamble"] = vec(f);
  return r;
}

json q_conglomerable(const QueryEnv& env, const json& args, const Context& c) {
  Partition p = c.partition(need(args, "partition", "conglomerable"));
  ConglomerabilityResult g = conglomerability_check(
      env.d, ConditionalFamily::from_set(env.d, p), args.value("trials", 200), env.seed);
  json r{{"tested", g.tested}, {"unknowns", g.unknowns}};
  if (!g.witness) {
    r["verdict"] = "no-witness";
    return r;
  }
  r["verdict"] = "not-conglomerable";
  r["witness"] = vec(*g.witness);
  r["source"] = g.source;
  // The witness closed under the set's own operator.
  if (env.d.spec()) {
    LossVerdict v = avoids_partial_loss(DesirSet::generated(env.d.dim(), {*g.witness}, *env.d.spec()));
    r["witness_closure_apl"] = loss(v);
  }
  return r;
}

json q_marginal_extension(const QueryEnv& env, const json& args, const Context& c) {
  Gamble f = c.gamble_arg(args, "gamble");
  Partition p = c.partition(need(args, "partition", "marginal-extension"));
  if (!env.d.spec()) throw ScenarioError("marginal-extension: the set has no operator");
  std::vector<DesirSet> conds;
  for (const Event& b : p.blocks()) conds.push_back(conditional_set(env.d, b));
  PrevisionBracket b = marginal_extension_prevision(marginal_set(env.d, p), conds, p,
                                                    *env.d.spec(), f, env.popt);
  json r = bracket(b);
  r["gamble"] = vec(f);
  return r;
}

json q_credal(const QueryEnv& env, const json& args, const Context& c) {
  CredalPolytope m = credal_intersection(env.d);
  EmptinessResult e = is_empty(m);
  json r{{"verdict", e.empty ? "empty" : "nonempty"}, {"empty", e.empty}};
  if (e.member) r["member"] = vec(e.member->p);
  if (e.empty) {
    r["weights"] = vec(e.weights);
    if (e.combination) r["combination"] = vec(*e.combination);
    r["farkas"] = vec(e.farkas);
  }
  if (args.contains("gamble")) {
    Gamble f = c.gamble_arg(args, "gamble");
    double lo = credal_lower(m, f);
    r["gamble"] = vec(f);
    r["lower"] = num(lo);
    r["upper"] = num(-credal_lower(m, -f));
    r["lo"] = r["lower"];
    r["hi"] = r["upper"];
  }
  return r;
}

json q_vertices(const QueryEnv& env, const json&, const Context&) {
  std::vector<LinearPrevision> vs = vertices(credal_intersection(env.d));
  json a = json::array();
  for (const LinearPrevision& v : vs) a.push_back(vec(v.p));
  return {{"verdict", std::to_string(vs.size()) + " vertices"}, {"vertices", a}};
}

json q_decide(const QueryEnv& env, const json& args, const Context& c) {
  std::string crit = need(args, "criterion", "decide").get<std::string>();
  std::vector<Gamble> opts = c.gamble_list(need(args, "options", "decide"));
  if (opts.empty()) throw ScenarioError("decide: no options");
  DecideOptions dopt;
  dopt.prevision.tol = std::min(env.popt.tol, 1e-10);
  DecisionReport r;
  bool kappa1 = env.d.is_generated() && env.d.spec() &&
                env.d.spec()->kind == OperatorKind::Kappa1;
  if (crit == "gamma-maximin") {
    r = gamma_maximin(env.d, opts, dopt);
  } else if (crit == "gamma-maximax") {
    r = gamma_maximax(env.d, opts, dopt);
  } else if (crit == "interval-dominance") {
    r = interval_dominance(env.d, opts, dopt);
  } else if (crit == "maximality") {
    r = kappa1 ? maximality_kappa1(env.d.generators(), opts)
               : generic_maximality(env.d, opts, std::nullopt, dopt);
  } else if (crit == "e-admissibility") {
    r = kappa1 ? e_admissible_kappa1(env.d.generators(), opts)
               : generic_e_admissibility(env.d, opts, std::nullopt, dopt);
  } else {
    throw ScenarioError("decide: unknown criterion '" + crit + "'");
  }
  json j = decision(r);
  json o = json::array();
  for (const Gamble& g : opts) o.push_back(vec(g));
  j["options"] = o;
  j["verdict"] = r.available ? join_indices(r.optimal) : "unavailable";
  return j;
}

json q_demo(const QueryEnv& env, const json& args, const Context&) {
  json d = run_demo(need(args, "name", "demo").get<std::string>(), env.seed);
  bool all = true;
  for (const json& row : d["rows"]) all = all && row.value("agrees", true);
  d["verdict"] = all ? "all-agree" : "differences-flagged";
  return d;
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"member", q_member},
      {"classify", q_classify},
      {"apl", q_apl},
      {"asl", q_asl},
      {"coherent", q_coherent},
      {"lower-prevision", q_lower},
      {"upper-prevision", q_upper},
      {"precise", q_precise},
      {"gbr", q_gbr},
      {"marginal", q_marginal},
      {"conditional", q_conditional},
      {"assemble", q_assemble},
      {"conglomerable", q_conglomerable},
      {"marginal-extension", q_marginal_extension},
      {"credal", q_credal},
      {"vertices", q_vertices},
      {"decide", q_decide},
      {"demo", q_demo},
  };
  return h;
}

json run_query(const QueryEnv& env, const std::string& type, const json& args,
               const Context& c) {
  auto it = handlers().find(type);
  if (it == handlers().end()) throw ScenarioError("unknown query type '" + type + "'");
  return it->second(env, args, c);
}

}  // namespace

DesirSet Scenario::set() const {
  if (catalog) return DesirSet::catalog(*catalog, space.size());
  std::vector<Gamble> gens;
  for (const std::string& name : generators) gens.push_back(gambles.at(name));
  return DesirSet::generated(space.size(), std::move(gens), *spec);
}

json Scenario::describe() const {
  json g = json::object();
  for (const auto& [name, f] : gambles) g[name] = vec(f);
  json j{{"space", space}, {"gambles", g}, {"tol", tol}, {"seed", seed}};
  if (spec) j["operator"] = describe_spec(*spec);
  if (catalog) {
    j["catalog"] = to_string(*catalog);
  } else {
    j["generators"] = generators;
  }
  return j;
}

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) throw ScenarioError("scenario: expected a JSON object");
  Scenario s;
  try {
    const json& space = need(j, "space", "scenario");
    if (!space.is_array() || space.empty()) throw ScenarioError("space: expected a nonempty list");
    for (const json& x : space) s.space.push_back(x.get<std::string>());
    std::vector<std::string> sorted = s.space;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ScenarioError("space: duplicate outcome labels");
    }
    if (j.contains("gambles")) {
      if (!j["gambles"].is_object()) throw ScenarioError("gambles: expected an object");
      for (const auto& [name, v] : j["gambles"].items()) {
        s.gambles.emplace(name, Gamble(need_vector(v, s.space.size(), "gambles." + name)));
      }
    }
    bool has_gens = j.contains("generators");
    bool has_cat = j.contains("catalog");
    if (has_gens == has_cat) {
      throw ScenarioError("scenario: exactly one of 'generators' and 'catalog' is required");
    }
    if (has_cat) {
      try {
        s.catalog = catalog_from_string(j["catalog"].get<std::string>());
        DesirSet::catalog(*s.catalog, s.space.size());
      } catch (const std::invalid_argument& e) {
        throw ScenarioError(std::string("catalog: ") + e.what());
      }
      if (j.contains("operator")) s.spec = parse_operator(j["operator"]);
    } else {
      s.spec = parse_operator(need(j, "operator", "scenario"));
      for (const json& x : j["generators"]) {
        std::string name = x.get<std::string>();
        if (!s.gambles.count(name)) throw ScenarioError("generators: unknown gamble '" + name + "'");
        s.generators.push_back(name);
      }
    }
    s.queries = j.value("queries", json::array());
    if (!s.queries.is_array()) throw ScenarioError("queries: expected a list");
    s.tol = j.value("tol", 1e-9);
    if (!(s.tol > 0)) throw ScenarioError("tol: must be positive");
    s.seed = j.value("seed", std::uint64_t{0});
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("scenario: ") + e.what());
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError(path + ": " + e.what());
  }
  return parse_scenario(j);
}

RunResult run_scenario(const Scenario& s, const RunOverrides& o) {
  Scenario eff = s;
  if (o.tol) eff.tol = *o.tol;
  if (o.seed) eff.seed = *o.seed;
  DesirSet d = eff.set();
  PrevisionOptions popt;
  popt.tol = eff.tol;
  QueryEnv env{eff, d, popt, eff.seed};

  RunResult out;
  json records = json::array();
  int errors = 0;
  bool numerical = false;
  for (std::size_t i = 0; i < eff.queries.size(); ++i) {
    const json& q = eff.queries[i];
    std::string where = "queries[" + std::to_string(i) + "]";
    std::string type;
    json args;
    try {
      type = need(q, "type", where).get<std::string>();
      args = q.value("args", json::object());
    } catch (const json::exception& e) {
      throw ScenarioError(where + ": " + e.what());
    }
    if (!handlers().count(type)) throw ScenarioError(where + ": unknown query type '" + type + "'");
    spdlog::info("query {} ({})", i, type);
    json rec;
    try {
      rec = run_query(env, type, args, Context(eff, where + "." + type));
    } catch (const ScenarioError&) {
      throw;
    } catch (const json::exception& e) {
      throw ScenarioError(where + ": " + e.what());
    } catch (const lp::NumericalError& e) {
      spdlog::error("query {} failed numerically: {}", i, e.what());
      rec = {{"error", e.what()}, {"verdict", "numerical-failure"}};
      numerical = true;
      ++errors;
    } catch (const std::exception& e) {
      spdlog::error("query {} failed: {}", i, e.what());
      rec = {{"error", e.what()}, {"verdict", "error"}};
      ++errors;
    }
    rec["index"] = i;
    rec["type"] = type;
    rec["args"] = args;
    records.push_back(rec);
  }
  out.report = {{"scenario", eff.describe()},
                {"set", d.describe()},
                {"records", records},
                {"errors", errors}};
  out.exit_code = numerical ? 3 : (errors ? 1 : 0);
  return out;
}

namespace {

std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char ch : s) {
    if (ch == '"') o += '"';
    o += ch;
  }
  return o + "\"";
}

std::string cell(const json& j) {
  if (j.is_null()) return "";
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return fmt_num(j.get<double>());
  return j.dump();
}

std::string record_detail(const json& r) {
  for (const char* key : {"error", "via", "witness", "counterexample", "member", "method",
                          "notes", "criterion"}) {
    if (r.contains(key)) {
      std::string s = cell(r[key]);
      if (!s.empty() && s != "[]") return std::string(key) + "=" + s;
    }
  }
  return "";
}

}  // namespace

std::string to_csv(const json& report) {
  std::ostringstream os;
  os << "index,type,verdict,lo,hi,detail\n";
  for (const json& r : report["records"]) {
    std::string verdict = r.contains("verdict") ? cell(r["verdict"]) : "";
    if (verdict.empty() && r.contains("value")) verdict = cell(r["value"]);
    os << r["index"].get<std::size_t>() << ',' << csv_field(r["type"].get<std::string>()) << ','
       << csv_field(verdict) << ',' << (r.contains("lo") ? cell(r["lo"]) : "") << ','
       << (r.contains("hi") ? cell(r["hi"]) : "") << ',' << csv_field(record_detail(r)) << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------- demos

namespace {

json row(const std::string& quantity, const json& reference, const json& computed,
         bool agrees, const std::string& note = "") {
  json r{{"quantity", quantity}, {"reference", reference}, {"computed", computed}, {"agrees", agrees}};
  if (!note.empty()) r["note"] = note;
  return r;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

json demo_allais() {
  AllaisReport r = allais_demo();
  json rows = json::array();
  const double ref[] = {1.0, 0.96, 0.6, 0.76};
  for (int i = 0; i < 4; ++i) {
    rows.push_back(row("P(f" + std::to_string(i + 1) + ")", ref[i], num(r.previsions[i]),
                       close(r.previsions[i], ref[i], 1e-12)));
  }
  rows.push_back(row("maximin {f1,f2}", "{f1}", r.prefers_f1 ? "{f1}" : join_indices(r.experiment1.optimal),
                     r.prefers_f1));
  rows.push_back(row("maximin {f3,f4}", "{f4}", r.prefers_f4 ? "{f4}" : join_indices(r.experiment2.optimal),
                     r.prefers_f4));
  rows.push_back(row("price conditions at mu1=0.96, mu2=0.7", true, r.price_conditions, r.price_conditions));
  rows.push_back(row("summands desirable", true, r.summands_desirable, r.summands_desirable));
  bool constant = true;
  for (std::size_t i = 0; i < r.sum.size(); ++i) constant = constant && close(r.sum[i], -0.02, 1e-12);
  rows.push_back(row("sum of summands", "constant -0.02", vec(r.sum), constant));
  rows.push_back(row("sum class", "StrictlyNegative", to_string(r.sum_class),
                     r.sum_class == GambleClass::StrictlyNegative));
  rows.push_back(row("additive closure avoids sure loss", "false", to_string(r.additive_closure.value),
                     r.additive_closure.value == Tri::False));
  return rows;
}

json demo_gbr() {
  Gamble f{1, -1, 0};
  Event b = Event::of(3, {0, 1});
  json rows = json::array();
  struct Case {
    CatalogId id;
    double gbr, member, weak;
  };
  // The reference triple for gbr-d3 is (0.1, 0.5, 0.75); only the middle
  // value survives recomputation.
  const Case cases[] = {{CatalogId::MedianStrict, -1, -1, 1},
                        {CatalogId::MedianWeak, -1, 1, 1},
                        {CatalogId::GbrD3, 0.1, 0.5, 0.75}};
  for (const Case& c : cases) {
    GbrResult g = gbr_conditional(DesirSet::catalog(c.id), f, b);
    std::string name = to_string(c.id);
    bool d3 = c.id == CatalogId::GbrD3;
    std::string note = d3 ? "reference value; oracle-certified value differs" : "";
    rows.push_back(row(name + " gbr", c.gbr, num(g.gbr.value()), close(g.gbr.value(), c.gbr, 1e-6),
                       close(g.gbr.value(), c.gbr, 1e-6) ? "" : note));
    rows.push_back(row(name + " member_sup", c.member, num(g.member_sup.value()),
                       close(g.member_sup.value(), c.member, 1e-6)));
    rows.push_back(row(name + " weak_sup", c.weak, num(g.weak_sup.value()),
                       close(g.weak_sup.value(), c.weak, 1e-6),
                       close(g.weak_sup.value(), c.weak, 1e-6) ? "" : note));
    rows.push_back(row(name + " gbr <= member_sup <= weak_sup", true, g.sandwich_holds, g.sandwich_holds));
    if (d3) {
      rows.push_back(row(name + " P(B)", 0.1, num(g.lower_b.value()), close(g.lower_b.value(), 0.1, 1e-6),
                         "the reference 0.1 matches the lower prevision of B"));
    }
  }
  return rows;
}

json demo_conglomerability() {
  DesirSet d = DesirSet::catalog(CatalogId::CongNatEx);
  Partition p({Event::of(4, {0, 1}), Event::of(4, {2, 3})});
  ConglomerabilityResult r = conglomerability_check(d, ConditionalFamily::from_set(d, p), 200, 1);
  json rows = json::array();
  Gamble expect{-1, 1, -1, 1};
  rows.push_back(row("witness", vec(expect), r.witness ? vec(*r.witness) : json("none"),
                     r.witness && *r.witness == expect));
  if (r.witness) {
    LossVerdict v = avoids_partial_loss(DesirSet::generated(4, {*r.witness}, *d.spec()));
    rows.push_back(row("closure of the witness avoids partial loss", "false", to_string(v.value),
                       v.value == Tri::False));
  }
  return rows;
}

json demo_zoo(std::uint64_t seed) {
  HierarchyReport h = hierarchy_probe(500, 5, seed);
  json rows = json::array();
  for (const char* tag : {"kappa4 in kappa3", "kappa3 in kappa1", "kappa4 in kappa2", "kappa2 in kappa1"}) {
    long count = std::count_if(h.violations.begin(), h.violations.end(),
                               [&](const auto& v) { return v.first == tag; });
    rows.push_back(row(std::string(tag) + " violations", 0, count, count == 0));
  }
  rows.push_back(row("queries", json(), h.queries, true));
  rows.push_back(row("kappa2 unknowns", json(), h.unknowns, true));
  return rows;
}

}  // namespace

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names{"allais", "gbr-bounds", "conglomerability",
                                              "kappa-zoo"};
  return names;
}

json run_demo(const std::string& name, std::uint64_t seed) {
  json rows;
  if (name == "allais") {
    rows = demo_allais();
  } else if (name == "gbr-bounds") {
    rows = demo_gbr();
  } else if (name == "conglomerability") {
    rows = demo_conglomerability();
  } else if (name == "kappa-zoo") {
    rows = demo_zoo(seed);
  } else {
    throw ScenarioError("unknown demo '" + name + "'");
  }
  return {{"demo", name}, {"rows", rows}};
}

std::string demo_table(const json& demo) {
  std::vector<std::array<std::string, 4>> lines{{"quantity", "reference", "computed", "agrees"}};
  for (const json& r : demo["rows"]) {
    std::string agrees = r["agrees"].get<bool>() ? "yes" : "NO";
    if (r.contains("note")) agrees += " (" + r["note"].get<std::string>() + ")";
    lines.push_back({cell(r["quantity"]), cell(r["reference"]), cell(r["computed"]), agrees});
  }
  std::array<std::size_t, 4> w{};
  for (const auto& l : lines) {
    for (int i = 0; i < 3; ++i) w[i] = std::max(w[i], l[i].size());
  }
  std::ostringstream os;
  os << "demo " << demo["demo"].get<std::string>() << "\n";
  for (const auto& l : lines) {
    for (int i = 0; i < 3; ++i) os << l[i] << std::string(w[i] - l[i].size() + 2, ' ');
    os << l[3] << "\n";
  }
  return os.str();
}

std::string demo_csv(const json& demo) {
  std::ostringstream os;
  os << "quantity,reference,computed,agrees,note\n";
  for (const json& r : demo["rows"]) {
    os << csv_field(cell(r["quantity"])) << ',' << csv_field(cell(r["reference"])) << ','
       << csv_field(cell(r["computed"])) << ',' << (r["agrees"].get<bool>() ? "true" : "false")
       << ',' << csv_field(r.value("note", "")) << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------- plot

std::string plot_svg(const Scenario& s, const std::vector<std::string>& marks,
                     int resolution) {
  if (s.space.size() != 2) throw ScenarioError("plot: the space must have two outcomes");
  if (resolution < 2 || resolution > 2000) throw ScenarioError("plot: resolution out of range");
  DesirSet d = s.set();
  Context ctx(s, "plot");
  std::vector<Gamble> points;
  for (const std::string& m : marks) {
    if (s.gambles.count(m)) {
      points.push_back(s.gambles.at(m));
      continue;
    }
    json j = json::parse(m.front() == '[' ? m : "[" + m + "]", nullptr, false);
    if (j.is_discarded()) throw ScenarioError("plot: cannot read mark '" + m + "'");
    points.push_back(ctx.gamble(j));
  }

  const double lim = 3.0, size = 600.0, margin = 50.0;
  const double cellpx = size / resolution;
  auto px = [&](double x) { return margin + (x + lim) / (2 * lim) * size; };
  auto py = [&](double y) { return margin + (lim - y) / (2 * lim) * size; };

  std::ostringstream os;
  os.precision(6);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size + 2 * margin
     << "\" height=\"" << size + 2 * margin << "\">\n"
     << "<title>" << d.describe() << "</title>\n"
     << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size << "\" height=\""
     << size << "\" fill=\"white\" stroke=\"black\"/>\n";
  long unknown = 0;
  // One rectangle per run of equal verdicts along a row.
  for (int r = 0; r < resolution; ++r) {
    double y = lim - (r + 0.5) * 2 * lim / resolution;
    int start = 0;
    Verdict cur = Verdict::Out;
    auto flush = [&](int end) {
      if (cur == Verdict::Out || end == start) return;
      os << "<rect x=\"" << margin + start * cellpx << "\" y=\"" << margin + r * cellpx
         << "\" width=\"" << (end - start) * cellpx << "\" height=\"" << cellpx << "\" fill=\""
         << (cur == Verdict::In ? "#5b8cc9" : "#bbbbbb") << "\"/>\n";
    };
    for (int c = 0; c < resolution; ++c) {
      double x = -lim + (c + 0.5) * 2 * lim / resolution;
      Verdict v = d.member(Gamble{x, y}).verdict;
      unknown += v == Verdict::Unknown;
      if (v != cur) {
        flush(c);
        cur = v;
        start = c;
      }
    }
    flush(resolution);
  }
  os << "<line x1=\"" << px(-lim) << "\" y1=\"" << py(0) << "\" x2=\"" << px(lim) << "\" y2=\""
     << py(0) << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << px(0) << "\" y1=\"" << py(-lim) << "\" x2=\"" << px(0) << "\" y2=\""
     << py(lim) << "\" stroke=\"black\"/>\n";
  for (int t = -3; t <= 3; ++t) {
    os << "<text x=\"" << px(t) << "\" y=\"" << margin + size + 18
       << "\" font-size=\"12\" text-anchor=\"middle\">" << t << "</text>\n"
       << "<text x=\"" << margin - 8 << "\" y=\"" << py(t) + 4
       << "\" font-size=\"12\" text-anchor=\"end\">" << t << "</text>\n";
  }
  os << "<text x=\"" << margin + size / 2 << "\" y=\"" << margin + size + 40
     << "\" font-size=\"14\" text-anchor=\"middle\">" << s.space[0] << "</text>\n"
     << "<text x=\"16\" y=\"" << margin + size / 2 << "\" font-size=\"14\" text-anchor=\"middle\""
     << " transform=\"rotate(-90 16 " << margin + size / 2 << ")\">" << s.space[1] << "</text>\n";
  if (d.is_generated()) {
    for (const Gamble& g : d.generators()) {
      os << "<circle cx=\"" << px(g[0]) << "\" cy=\"" << py(g[1])
         << "\" r=\"4\" fill=\"#c0392b\" stroke=\"black\"/>\n";
    }
  }
  for (const Gamble& g : points) {
    double x = px(g[0]), y = py(g[1]);
    os << "<path d=\"M" << x - 5 << ' ' << y - 5 << " L" << x + 5 << ' ' << y + 5 << " M" << x - 5
       << ' ' << y + 5 << " L" << x + 5 << ' ' << y - 5 << "\" stroke=\"#1e8449\" stroke-width=\"2\"/>\n";
  }
  os << "</svg>\n";
  if (unknown) spdlog::warn("plot: {} grid points with an undecided verdict, drawn grey", unknown);
  return os.str();
}

}  // namespace desir::cli
