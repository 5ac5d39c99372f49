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

#include "desir/previsions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "desir/lp.hpp"
#include "desir/sampling.hpp"

namespace desir {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Dead zone for the sign of a computed lower prevision.
constexpr double kSignEps = 1e-9;
// Margin used by the finite-family generic forms.
constexpr double kEta = 1e-7;

bool is_kappa1(const DesirSet& d) {
  return d.is_generated() && d.spec()->kind == OperatorKind::Kappa1;
}

// Nearest fraction p/q, q <= 1000, inside [lo, hi], via continued-fraction
// convergents of the midpoint.
std::optional<double> simple_fraction_in(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) return std::nullopt;
  double x = 0.5 * (lo + hi);
  double slack = 1e-12 * (1.0 + std::abs(x));
  double h0 = 1, h1 = 0, k0 = 0, k1 = 1;  // convergents h/k
  double r = x;
  for (int it = 0; it < 40; ++it) {
    double a = std::floor(r);
    double h = a * h0 + h1, k = a * k0 + k1;
    if (k > 1000) break;
    double q = h / k;
    if (q >= lo - slack && q <= hi + slack) return q;
    h1 = h0;
    h0 = h;
    k1 = k0;
    k0 = k;
    double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

std::pair<Tri, std::optional<double>> boundary_at(const std::function<Verdict(double)>& pred,
                                                  const PrevisionBracket& b) {
  std::optional<double> s = simple_fraction_in(b.lo, b.hi);
  if (!s) return {Tri::Unknown, std::nullopt};
  Verdict v = pred(*s);
  if (v == Verdict::Unknown) return {Tri::Unknown, s};
  return {tri(v == Verdict::In), s};
}

double inf_on(const Gamble& f, const Event& b) {
  double m = kInf;
  for (std::size_t i : b.indices()) m = std::min(m, f[i]);
  return m;
}

double sup_on(const Gamble& f, const Event& b) {
  double m = -kInf;
  for (std::size_t i : b.indices()) m = std::max(m, f[i]);
  return m;
}

PrevisionOptions quiet(PrevisionOptions opt) {
  opt.cross_check = false;
  return opt;
}

lp::Result solve_or_throw(const lp::Problem& p, const char* what) {
  lp::Result r = lp::solve(p);
  if (r.status == lp::Status::NumericalFailure) {
    throw lp::NumericalError(std::string(what) + ": LP numerical failure");
  }
  return r;
}

}  // namespace

double PrevisionBracket::value() const {
  if (lo == hi) return lo;
  return 0.5 * (lo + hi);
}

PrevisionBracket sup_of_lower_set(const std::function<Verdict(double)>& pred, double lo,
                                  double hi, const PrevisionOptions& opt) {
  PrevisionBracket b;
  b.width_tol = opt.tol;
  b.method = "bisection";
  double lo_c = -kInf, hi_c = kInf;
  bool unknown = false;

  double pad = 1.0;
  Verdict v = pred(lo);
  for (int k = 0; v == Verdict::Out && k < 30; ++k) {
    hi_c = lo;
    lo -= pad;
    pad *= 2;
    v = pred(lo);
  }
  if (v == Verdict::In) lo_c = lo;
  if (v == Verdict::Out) hi_c = lo;
  unknown |= v == Verdict::Unknown;

  if (std::isfinite(lo_c)) {
    pad = 1.0;
    v = pred(hi);
    for (int k = 0; v == Verdict::In && k < 30; ++k) {
      lo_c = hi;
      hi += pad;
      pad *= 2;
      v = pred(hi);
    }
    if (v == Verdict::Out) hi_c = std::min(hi_c, hi);
    unknown |= v == Verdict::Unknown;
  }

  if (std::isfinite(lo_c) && std::isfinite(hi_c)) {
    for (int it = 0; it < opt.max_iter && hi_c - lo_c > opt.tol; ++it) {
      double mid = 0.5 * (lo_c + hi_c);
      if (mid <= lo_c || mid >= hi_c) break;
      Verdict m = pred(mid);
      if (m == Verdict::Unknown) {
        unknown = true;
        break;
      }
      (m == Verdict::In ? lo_c : hi_c) = mid;
    }
  }
  b.lo = lo_c;
  b.hi = hi_c;
  b.certified = !unknown;
  return b;
}

PrevisionBracket inf_of_upper_set(const std::function<Verdict(double)>& pred, double lo,
                                  double hi, const PrevisionOptions& opt) {
  // Mirror: inf{μ : pred(μ)} = -sup{ν : pred(-ν)}. Midpoints mirror exactly,
  // so P̄(f) and -P̲(-f) query identical gambles.
  PrevisionBracket m =
      sup_of_lower_set([&](double nu) { return pred(-nu); }, -hi, -lo, opt);
  PrevisionBracket b = m;
  b.lo = -m.hi;
  b.hi = -m.lo;
  return b;
}

double kappa1_lower_lp(const std::vector<Gamble>& gens, const Gamble& f, double lp_tol) {
  const std::size_t n = f.size();
  lp::Problem p;
  for (std::size_t j = 0; j < gens.size(); ++j) p.add_variable(0.0, lp::kInf, 0.0);
  std::size_t mu = p.add_variable(-lp::kInf, lp::kInf, 1.0);
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<double> row(gens.size() + 1);
    for (std::size_t j = 0; j < gens.size(); ++j) row[j] = gens[j][w];
    row[mu] = 1.0;
    p.add_constraint(std::move(row), lp::Relation::LessEq, f[w]);
  }
  lp::Result r = lp::solve(p, {lp_tol});
  if (r.status == lp::Status::Unbounded) return kInf;
  if (r.status != lp::Status::Optimal) {
    throw lp::NumericalError("kappa1 prevision: LP status " +
                             std::string(lp::to_string(r.status)));
  }
  return r.objective_value;
}

namespace {

// A Kappa2 set with a sure loss holds every gamble (integer multiples of a
// uniformly negative member dominate anything), so every price is
// acceptable; the bounded multiplicity search cannot see that far.
std::optional<PrevisionBracket> kappa2_everything(const DesirSet& d, double value) {
  if (!d.is_generated() || d.spec()->kind != OperatorKind::Kappa2) return std::nullopt;
  if (avoids_sure_loss(d).value != Tri::False) return std::nullopt;
  PrevisionBracket b;
  b.lo = b.hi = value;
  b.method = "sure-loss";
  b.boundary_in = Tri::True;
  return b;
}

}  // namespace

PrevisionBracket lower_prevision(const DesirSet& d, const Gamble& f,
                                 const PrevisionOptions& opt) {
  require_same_size(f, d.dim(), "lower prevision");
  if (auto all = kappa2_everything(d, kInf)) return *all;
  auto pred = [&](double mu) { return d.member(f - mu).verdict; };
  PrevisionBracket b;
  if (is_kappa1(d)) {
    double v = kappa1_lower_lp(d.generators(), f, d.spec()->tol.lp_tol);
    b.lo = b.hi = v;
    b.width_tol = opt.tol;
    b.method = "lp";
    if (opt.cross_check) {
      b.cross_check = sup_of_lower_set(pred, f.min() - 1.0, f.max() + 1.0, opt).value();
    }
    if (std::isfinite(v)) {
      double slack = 1e-9 * (1.0 + std::abs(v));
      PrevisionBracket probe = b;
      probe.lo = v - slack;
      probe.hi = v + slack;
      std::tie(b.boundary_in, b.boundary_point) = boundary_at(pred, probe);
    }
    return b;
  }
  b = sup_of_lower_set(pred, f.min() - 1.0, f.max() + 1.0, opt);
  std::tie(b.boundary_in, b.boundary_point) = boundary_at(pred, b);
  return b;
}

PrevisionBracket upper_prevision(const DesirSet& d, const Gamble& f,
                                 const PrevisionOptions& opt) {
  require_same_size(f, d.dim(), "upper prevision");
  if (auto all = kappa2_everything(d, -kInf)) return *all;
  const Gamble g = -f;
  auto pred = [&](double mu) { return d.member(g + mu).verdict; };
  PrevisionBracket b;
  if (is_kappa1(d)) {
    double v = -kappa1_lower_lp(d.generators(), g, d.spec()->tol.lp_tol);
    b.lo = b.hi = v;
    b.width_tol = opt.tol;
    b.method = "lp";
    if (opt.cross_check) {
      b.cross_check = inf_of_upper_set(pred, f.min() - 1.0, f.max() + 1.0, opt).value();
    }
    if (std::isfinite(v)) {
      double slack = 1e-9 * (1.0 + std::abs(v));
      PrevisionBracket probe = b;
      probe.lo = v - slack;
      probe.hi = v + slack;
      std::tie(b.boundary_in, b.boundary_point) = boundary_at(pred, probe);
    }
    return b;
  }
  b = inf_of_upper_set(pred, f.min() - 1.0, f.max() + 1.0, opt);
  std::tie(b.boundary_in, b.boundary_point) = boundary_at(pred, b);
  if (opt.cross_check) b.cross_check = -lower_prevision(d, g, quiet(opt)).value();
  return b;
}

std::optional<std::pair<double, double>> find_monotonicity_violation(
    const DesirSet& d, const Gamble& f, int samples, std::uint64_t seed) {
  Sampler s(seed);
  double lo = f.min() - 1.0, hi = f.max() + 1.0;
  for (int t = 0; t < samples; ++t) {
    double a = s.uniform(lo, hi), b = s.uniform(lo, hi);
    if (a > b) std::swap(a, b);
    if (a == b) continue;
    if (d.member(f - b).in() && d.member(f - a).out()) return std::make_pair(a, b);
  }
  return std::nullopt;
}

bool AdditivityReport::holds() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.ok; });
}

AdditivityReport check_constant_additivity(const DesirSet& d, const Gamble& f,
                                           const std::vector<double>& shifts,
                                           const PrevisionOptions& opt) {
  AdditivityReport r;
  PrevisionOptions q = quiet(opt);
  double base = lower_prevision(d, f, q).value();
  for (double c : shifts) {
    AdditivityCheck ch;
    ch.shift = c;
    ch.shifted = lower_prevision(d, f + c, q).value();
    ch.expected = base + c;
    ch.ok = ch.shifted == ch.expected || std::abs(ch.shifted - ch.expected) <= 2 * opt.tol;
    r.checks.push_back(ch);
  }
  return r;
}

bool PAxiomsReport::passed() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const auto& a) { return a.passed(); });
}

const PAxiomCheck& PAxiomsReport::get(const std::string& axiom) const {
  for (const auto& a : axioms) {
    if (a.axiom == axiom) return a;
  }
  throw std::out_of_range("no axiom " + axiom);
}

PAxiomsReport check_p_axioms(const DesirSet& d, int samples, std::uint64_t seed,
                             const std::vector<Gamble>& probes,
                             const PrevisionOptions& opt) {
  const std::size_t n = d.dim();
  PrevisionOptions q = quiet(opt);
  auto price = [&](const Gamble& f) -> std::optional<double> {
    PrevisionBracket b = lower_prevision(d, f, q);
    if (!b.certified || !std::isfinite(b.value())) return std::nullopt;
    return b.value();
  };
  std::optional<OperatorKind> kind;
  if (d.spec()) kind = d.spec()->kind;
  auto kind_in = [&](std::initializer_list<OperatorKind> ks) {
    return kind && std::find(ks.begin(), ks.end(), *kind) != ks.end();
  };

  PAxiomCheck p1{"P1", true, 0, 0, {}};
  PAxiomCheck p2{"P2", kind_in({OperatorKind::Kappa1, OperatorKind::Kappa2}), 0, 0, {}};
  PAxiomCheck p3{"P3", kind_in({OperatorKind::Kappa1, OperatorKind::Kappa3}), 0, 0, {}};

  auto check_p1 = [&](const Gamble& f) {
    auto v = price(f);
    if (!v) return void(++p1.unknowns);
    ++p1.checks;
    if (*v < f.min() - opt.tol) p1.findings.push_back({{f}, 1.0, *v, f.min()});
  };
  auto check_p2 = [&](const Gamble& f, const Gamble& g) {
    auto a = price(f), b = price(g), c = price(f + g);
    if (!a || !b || !c) return void(++p2.unknowns);
    ++p2.checks;
    if (*c < *a + *b - 3 * opt.tol) p2.findings.push_back({{f, g}, 1.0, *c, *a + *b});
  };
  auto check_p3 = [&](const Gamble& f, double lambda) {
    auto a = price(f), b = price(f * lambda);
    if (!a || !b) return void(++p3.unknowns);
    ++p3.checks;
    if (std::abs(*b - lambda * *a) > 2 * opt.tol * (1.0 + lambda)) {
      p3.findings.push_back({{f}, lambda, *b, lambda * *a});
    }
  };

  const double lambdas[] = {2.0, 0.5, 3.0};
  for (std::size_t i = 0; i < probes.size(); ++i) {
    check_p1(probes[i]);
    for (std::size_t j = i; j < probes.size(); ++j) check_p2(probes[i], probes[j]);
    for (double l : lambdas) check_p3(probes[i], l);
  }
  Sampler s(seed);
  for (int t = 0; t < samples; ++t) {
    Gamble f = s.gamble(n), g = s.gamble(n);
    check_p1(f);
    check_p2(f, g);
    check_p3(f, lambdas[s.index(3)]);
  }
  PAxiomsReport r;
  r.axioms = {p1, p2, p3};
  return r;
}

const char* to_string(LeqUprResult::Kind k) {
  switch (k) {
    case LeqUprResult::Kind::Holds:
      return "holds";
    case LeqUprResult::Kind::Violation:
      return "violation";
    case LeqUprResult::Kind::WitnessPair:
      return "witness-pair";
  }
  return "?";
}

namespace {

struct Pair {
  Gamble g1, g2;
  double eps;
};

std::optional<Pair> generator_pair(const DesirSet& d) {
  if (!d.is_generated()) return std::nullopt;
  const auto& gens = d.generators();
  const OperatorKind kind = d.spec()->kind;
  const std::size_t n = d.dim();
  auto accept = [&](const Gamble& g1, double eps) -> std::optional<Pair> {
    if (!(eps > 1e-9)) return std::nullopt;
    Gamble g2 = Gamble::constant(n, -eps) - g1;
    if (d.member(g1).in() && d.member(g2).in()) return Pair{g1, g2, eps};
    return std::nullopt;
  };
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (kind == OperatorKind::Kappa1 || kind == OperatorKind::Kappa3) {
        // max ε s.t. λ g_i + g_j + ε <= 0; the partner -ε - λg_i dominates g_j.
        lp::Problem p;
        std::size_t lam = p.add_variable(0.0, 1e6, 0.0);
        std::size_t eps = p.add_variable(0.0, 1e6, 1.0);
        for (std::size_t w = 0; w < n; ++w) {
          std::vector<double> row(2);
          row[lam] = gens[i][w];
          row[eps] = 1.0;
          p.add_constraint(std::move(row), lp::Relation::LessEq, -gens[j][w]);
        }
        lp::Result r = lp::solve(p);
        if (r.status != lp::Status::Optimal) continue;
        if (auto w = accept(gens[i] * r.primal[lam], r.objective_value)) return w;
      } else {
        int top = kind == OperatorKind::Kappa2 ? 4 : 1;
        for (int a = 1; a <= top; ++a) {
          for (int b = 1; b <= top; ++b) {
            Gamble g1 = gens[i] * a;
            double eps = -(g1 + gens[j] * b).max();
            if (auto w = accept(g1, eps)) return w;
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

LeqUprResult lpr_leq_upr_check(const DesirSet& d, int samples, std::uint64_t seed,
                               const std::vector<Gamble>& probes,
                               const PrevisionOptions& opt) {
  LeqUprResult res;
  PrevisionOptions q = quiet(opt);
  Sampler s(seed);
  const std::size_t n = d.dim();
  int total = static_cast<int>(probes.size()) + samples;
  for (int t = 0; t < total; ++t) {
    Gamble f = t < static_cast<int>(probes.size()) ? probes[static_cast<std::size_t>(t)]
                                                   : s.gamble(n);
    PrevisionBracket lo = lower_prevision(d, f, q);
    PrevisionBracket up = upper_prevision(d, f, q);
    if (!lo.certified || !up.certified) continue;
    ++res.tested;
    if (!(lo.value() > up.value() + 2 * opt.tol)) continue;
    res.kind = LeqUprResult::Kind::Violation;
    res.f = f;
    res.lower = lo.value();
    res.upper = up.value();
    if (auto pair = generator_pair(d)) {
      res.kind = LeqUprResult::Kind::WitnessPair;
      res.g1 = pair->g1;
      res.g2 = pair->g2;
      res.eps = pair->eps;
      res.notes = "generator pair";
      return res;
    }
    if (std::isfinite(res.lower) && std::isfinite(res.upper)) {
      // Buy f at P̲ - δ, sell it at P̄ + δ.
      double delta = (res.lower - res.upper) / 4;
      Gamble g1 = f - (res.lower - delta);
      Gamble g2 = -f + (res.upper + delta);
      if (d.member(g1).in() && d.member(g2).in()) {
        res.kind = LeqUprResult::Kind::WitnessPair;
        res.g1 = g1;
        res.g2 = g2;
        res.eps = 2 * delta;
        res.notes = "price transactions";
        return res;
      }
    }
    res.notes = "no member pair recovered";
    return res;
  }
  res.notes = "no violation on the sampled gambles";
  return res;
}

PrecisionResult is_precise(const DesirSet& d, int samples, std::uint64_t seed,
                           const PrevisionOptions& opt) {
  PrecisionResult res;
  const std::size_t n = d.dim();
  PrevisionOptions q = quiet(opt);

  LeqUprResult pre = lpr_leq_upr_check(d, std::min(samples, 200), seed, {}, opt);
  if (pre.kind != LeqUprResult::Kind::Holds) {
    res.value = Tri::False;
    res.counterexample = pre.f;
    res.lower = pre.lower;
    res.upper = pre.upper;
    res.notes = "lower prevision exceeds upper prevision";
    return res;
  }

  std::vector<Gamble> structured;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    structured.emplace_back(std::move(e));
  }
  if (n <= 4) {
    const double levels[] = {1.0, 0.5, 0.0, -0.5, -1.0};
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      std::vector<double> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = levels[idx[i]];
      structured.emplace_back(std::move(v));
      std::size_t k = n;
      while (k > 0 && ++idx[k - 1] == 5) idx[--k] = 0;
      if (k == 0) break;
    }
  }

  const double eps_grid[] = {1e-1, 1e-3, 1e-6};
  Sampler s(seed);
  for (int t = 0; t < samples; ++t) {
    Gamble f = static_cast<std::size_t>(t) < structured.size()
                   ? structured[static_cast<std::size_t>(t)]
                   : s.gamble(n);
    ++res.tested;
    PrevisionBracket lo = lower_prevision(d, f, q);
    PrevisionBracket up = upper_prevision(d, f, q);
    if (!lo.certified || !up.certified) {
      ++res.unknowns;
      continue;
    }
    if (std::abs(up.value() - lo.value()) > 2 * opt.tol) {
      res.value = Tri::False;
      res.counterexample = f;
      res.lower = lo.value();
      res.upper = up.value();
      res.notes = "upper and lower previsions differ";
      return res;
    }
    Membership m = d.member(f);
    if (m.unknown()) {
      ++res.unknowns;
      continue;
    }
    if (m.in()) continue;
    for (double e : eps_grid) {
      Membership c = d.member(-f + e);
      if (c.unknown()) {
        ++res.unknowns;
        continue;
      }
      if (c.out()) {
        res.value = Tri::False;
        res.counterexample = f;
        res.lower = lo.value();
        res.upper = up.value();
        res.notes = "f and eps - f both outside the set";
        return res;
      }
    }
  }
  res.value = res.unknowns > 0 ? Tri::Unknown : Tri::True;
  res.notes = "no counterexample among the tested gambles";
  return res;
}

WeakClosureReport closure_equals_weak_set(const DesirSet& d, int samples,
                                          std::uint64_t seed, const PrevisionOptions& opt) {
  WeakClosureReport r;
  PrevisionOptions q = quiet(opt);
  Sampler s(seed);
  const std::size_t n = d.dim();
  const double grid[] = {1e-1, 1e-2, 1e-3, 1e-4};
  for (int t = 0; t < samples; ++t) {
    Gamble f = s.gamble(n);
    PrevisionBracket b = lower_prevision(d, f, q);
    if (!b.certified || !std::isfinite(b.value())) {
      ++r.unknowns;
    } else {
      Gamble edge = f - b.value();
      for (double e : grid) {
        Membership m = d.member(edge + e);
        ++r.checks;
        if (m.unknown()) ++r.unknowns;
        if (m.out()) {
          r.violations.push_back("boundary gamble " + edge.to_string() + " + " +
                                 std::to_string(e) + " is not a member");
        }
      }
    }
    Membership m = d.member(f);
    if (m.in()) {
      ++r.checks;
      if (b.certified && b.value() < -opt.tol) {
        r.violations.push_back("member " + f.to_string() + " has lower prevision " +
                               std::to_string(b.value()));
      }
    }
  }
  return r;
}

LowerPrevisionFn lower_prevision_fn(const DesirSet& d, const PrevisionOptions& opt) {
  PrevisionOptions q = quiet(opt);
  return [d, q](const Gamble& f) { return lower_prevision(d, f, q).value(); };
}

LowerPrevisionFn functional_fn(const PriceFunctional& F) {
  return [F](const Gamble& f) { return F(f); };
}

namespace {

constexpr double kLprTol = 1e-9;

struct Family {
  std::vector<Gamble> gambles;
  std::vector<Gamble> h;  // f_i - P̲(f_i)
  std::vector<double> price;
  std::size_t n = 0;
};

Family prepare(const LowerPrevisionFn& lower, const std::vector<Gamble>& family) {
  Family fam;
  fam.gambles = family;
  if (family.empty()) return fam;
  fam.n = family.front().size();
  for (const Gamble& f : family) {
    require_same_size(f, fam.n, "lower prevision family");
    double p = lower(f);
    if (!std::isfinite(p)) throw std::domain_error("lower prevision is not finite");
    fam.price.push_back(p);
    fam.h.push_back(f - p);
  }
  return fam;
}

// max t s.t. Σ λ_j h_j - base + t <= 0, λ >= 0; with `simplex`, Σλ = 1 and
// no base. Returns (t, λ).
std::pair<double, std::vector<double>> margin_lp(const std::vector<Gamble>& h,
                                                 const Gamble* base, bool simplex,
                                                 std::size_t n) {
  lp::Problem p;
  for (std::size_t j = 0; j < h.size(); ++j) p.add_variable(0.0, simplex ? lp::kInf : 1e6, 0.0);
  std::size_t t = p.add_variable(-lp::kInf, 1e6, 1.0);
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<double> row(h.size() + 1);
    for (std::size_t j = 0; j < h.size(); ++j) row[j] = h[j][w];
    row[t] = 1.0;
    p.add_constraint(std::move(row), lp::Relation::LessEq, base ? (*base)[w] : 0.0);
  }
  if (simplex) {
    std::vector<double> sum(h.size() + 1, 1.0);
    sum[t] = 0.0;
    p.add_constraint(std::move(sum), lp::Relation::Equal, 1.0);
  }
  lp::Result r = solve_or_throw(p, "lower prevision check");
  if (r.status != lp::Status::Optimal) {
    throw lp::NumericalError("lower prevision check: LP status " +
                             std::string(lp::to_string(r.status)));
  }
  return {r.objective_value, std::vector<double>(r.primal.begin(), r.primal.begin() +
                                                                       static_cast<long>(h.size()))};
}

// Prices are only known to the bisection tolerance, so margins are read as
// in the generic forms: each gamble taking part may shift by kEta.
bool beats_eta(double t, const std::vector<double>& mult) {
  double total = 1.0;
  for (double m : mult) total += m;
  return t > kEta * total;
}

void fill_witness(LprCheck& c, const Family& fam, const std::vector<double>& lam) {
  for (std::size_t j = 0; j < lam.size(); ++j) {
    if (lam[j] > 1e-12) {
      c.witness.push_back(fam.gambles[j]);
      c.multipliers.push_back(lam[j]);
    }
  }
}

LprCheck convex_sure_loss(const Family& fam, bool integers) {
  LprCheck c;
  c.criterion = integers ? "finite-sum" : "convex-combination";
  auto [t, lam] = margin_lp(fam.h, nullptr, true, fam.n);
  if (!(t > kEta)) {
    c.value = Tri::True;
    c.notes = "no uniformly negative combination";
    return c;
  }
  c.value = Tri::False;
  if (!integers) {
    fill_witness(c, fam, lam);
    c.notes = "sup of the combination is " + std::to_string(-t);
    return c;
  }
  // Strict negativity is open, so rounding a scaled λ keeps it for some
  // scale; recover explicit multiplicities.
  double top = *std::max_element(lam.begin(), lam.end());
  for (int scale = 1; scale <= 1000; ++scale) {
    std::vector<double> mult(lam.size());
    double total = 0;
    for (std::size_t j = 0; j < lam.size(); ++j) {
      mult[j] = std::round(scale * lam[j] / top);
      total += mult[j];
    }
    if (total == 0) continue;
    std::vector<double> sum(fam.n, 0.0);
    for (std::size_t j = 0; j < lam.size(); ++j) {
      for (std::size_t w = 0; w < fam.n; ++w) sum[w] += mult[j] * fam.h[j][w];
    }
    if (*std::max_element(sum.begin(), sum.end()) < 0) {
      fill_witness(c, fam, mult);
      c.notes = "finite sum with multiplicities scaled by " + std::to_string(scale);
      return c;
    }
  }
  fill_witness(c, fam, lam);
  c.notes = "uniformly negative real combination; no small integer rounding found";
  return c;
}

DesirSet shifted_set(const Family& fam, const ClosureSpec& spec, double eta) {
  std::vector<Gamble> gens;
  for (const Gamble& h : fam.h) gens.push_back(h + eta);
  return DesirSet::generated(fam.n, std::move(gens), spec);
}

std::optional<LprCheck> check_p1(const Family& fam) {
  for (std::size_t i = 0; i < fam.gambles.size(); ++i) {
    if (fam.price[i] < fam.gambles[i].min() - kLprTol) {
      LprCheck c;
      c.value = Tri::False;
      c.criterion = "price-above-inf";
      c.witness = {fam.gambles[i]};
      c.multipliers = {1.0};
      c.notes = "lower prevision below the infimum";
      return c;
    }
  }
  return std::nullopt;
}

}  // namespace

LprCheck lpr_avoids_sure_loss_generic(const LowerPrevisionFn& lower,
                                      const std::vector<Gamble>& family,
                                      const ClosureSpec& spec) {
  LprCheck c;
  c.criterion = "generic";
  if (family.empty()) {
    c.value = Tri::True;
    return c;
  }
  Family fam = prepare(lower, family);
  LossVerdict v = avoids_sure_loss(shifted_set(fam, spec, kEta));
  c.value = v.value;
  if (v.witness) c.witness = {*v.witness};
  c.notes = v.notes;
  return c;
}

LprCheck lpr_avoids_sure_loss(const LowerPrevisionFn& lower,
                              const std::vector<Gamble>& family, const ClosureSpec& spec) {
  spec.validate();
  if (family.empty()) {
    LprCheck c;
    c.value = Tri::True;
    c.criterion = "empty-family";
    return c;
  }
  switch (spec.kind) {
    case OperatorKind::Kappa3:
    case OperatorKind::Kappa4: {
      Family fam = prepare(lower, family);
      LprCheck c;
      c.criterion = "price-below-sup";
      for (std::size_t i = 0; i < family.size(); ++i) {
        if (fam.price[i] > family[i].max() + kEta) {
          c.value = Tri::False;
          c.witness = {family[i]};
          c.multipliers = {1.0};
          c.notes = "lower prevision above the supremum";
          return c;
        }
      }
      c.value = Tri::True;
      return c;
    }
    case OperatorKind::Kappa1:
    case OperatorKind::Kappa2:
      return convex_sure_loss(prepare(lower, family), spec.kind == OperatorKind::Kappa2);
    default:
      return lpr_avoids_sure_loss_generic(lower, family, spec);
  }
}

LprCheck lpr_coherent_generic(const LowerPrevisionFn& lower,
                              const std::vector<Gamble>& family, const ClosureSpec& spec) {
  LprCheck c = lpr_avoids_sure_loss_generic(lower, family, spec);
  c.criterion = "generic";
  if (c.value != Tri::True || family.empty()) return c;
  Family fam = prepare(lower, family);
  if (auto bad = check_p1(fam)) return *bad;
  DesirSet ext = shifted_set(fam, spec, kEta);
  bool unknown = false;
  for (std::size_t i = 0; i < family.size(); ++i) {
    Membership m = ext.member(fam.h[i] - kEta);
    if (m.in()) {
      c.value = Tri::False;
      c.witness = {family[i]};
      c.multipliers = {1.0};
      c.notes = "the price of this gamble can be raised";
      return c;
    }
    unknown |= m.unknown();
  }
  c.value = unknown ? Tri::Unknown : Tri::True;
  return c;
}

LprCheck lpr_coherent(const LowerPrevisionFn& lower, const std::vector<Gamble>& family,
                      const ClosureSpec& spec) {
  spec.validate();
  if (family.empty()) {
    LprCheck c;
    c.value = Tri::True;
    c.criterion = "empty-family";
    return c;
  }
  const bool closed_form = spec.kind == OperatorKind::Kappa1 ||
                           spec.kind == OperatorKind::Kappa2 ||
                           spec.kind == OperatorKind::Kappa3 ||
                           spec.kind == OperatorKind::Kappa4;
  if (!closed_form) return lpr_coherent_generic(lower, family, spec);

  LprCheck asl = lpr_avoids_sure_loss(lower, family, spec);
  if (asl.value != Tri::True) return asl;
  Family fam = prepare(lower, family);
  if (auto bad = check_p1(fam)) return *bad;
  const std::size_t k = family.size();
  LprCheck c;
  c.value = Tri::True;

  auto raise = [&](std::size_t i, std::vector<Gamble> others, std::vector<double> mult) {
    c.value = Tri::False;
    c.witness = std::move(others);
    c.multipliers = std::move(mult);
    c.witness.push_back(family[i]);
    c.multipliers.push_back(-1.0);
    c.notes = "the price of the last gamble can be raised";
  };

  switch (spec.kind) {
    case OperatorKind::Kappa4:
      c.criterion = "pairwise-difference";
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          if (i != j && beats_eta(-(fam.h[j] - fam.h[i]).max(), {1.0})) {
            raise(i, {family[j]}, {1.0});
            return c;
          }
        }
      }
      return c;
    case OperatorKind::Kappa3:
      c.criterion = "pairwise-scaled-difference";
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          auto [t, lam] = margin_lp({fam.h[j]}, &fam.h[i], false, fam.n);
          if (beats_eta(t, lam)) {
            raise(i, {family[j]}, {lam[0]});
            return c;
          }
        }
      }
      return c;
    case OperatorKind::Kappa1:
    case OperatorKind::Kappa2: {
      c.criterion = "combination-lp";
      bool k1_ok = true;
      for (std::size_t i = 0; i < k && k1_ok; ++i) {
        auto [t, lam] = margin_lp(fam.h, &fam.h[i], false, fam.n);
        if (beats_eta(t, lam)) {
          k1_ok = false;
          if (spec.kind == OperatorKind::Kappa1) {
            std::vector<Gamble> others;
            std::vector<double> mult;
            for (std::size_t j = 0; j < k; ++j) {
              if (lam[j] > 1e-12) {
                others.push_back(family[j]);
                mult.push_back(lam[j]);
              }
            }
            raise(i, std::move(others), std::move(mult));
            return c;
          }
        }
      }
      if (k1_ok) {
        if (spec.kind == OperatorKind::Kappa2) c.criterion = "implied-by-kappa1";
        return c;
      }
      c.criterion = "finite-sum";
      if (k > 8) {
        c.value = Tri::Unknown;
        c.notes = "family too large for the multiplicity search";
        return c;
      }
      std::vector<int> mult(k, 0);
      while (true) {
        std::size_t pos = 0;
        while (pos < k && ++mult[pos] == 3) mult[pos++] = 0;
        if (pos == k) break;
        std::vector<double> sum(fam.n, 0.0);
        for (std::size_t j = 0; j < k; ++j) {
          for (std::size_t w = 0; w < fam.n; ++w) sum[w] += mult[j] * fam.h[j][w];
        }
        for (std::size_t i = 0; i < k; ++i) {
          double top = -kInf;
          for (std::size_t w = 0; w < fam.n; ++w) top = std::max(top, sum[w] - fam.h[i][w]);
          if (beats_eta(-top, std::vector<double>(mult.begin(), mult.end()))) {
            std::vector<Gamble> others;
            std::vector<double> m;
            for (std::size_t j = 0; j < k; ++j) {
              if (mult[j] > 0) {
                others.push_back(family[j]);
                m.push_back(mult[j]);
              }
            }
            raise(i, std::move(others), std::move(m));
            return c;
          }
        }
      }
      c.value = Tri::Unknown;
      c.notes = "no violation with multiplicities up to 2";
      return c;
    }
    default:
      break;
  }
  return c;
}

GbrResult gbr_conditional(const DesirSet& d, const Gamble& f, const Event& b,
                          const PrevisionOptions& opt) {
  require_same_size(f, d.dim(), "gbr");
  if (b.empty()) throw std::invalid_argument("gbr: empty event");
  PrevisionOptions inner = quiet(opt);
  inner.tol = opt.tol / 10;
  PrevisionOptions outer = quiet(opt);

  GbrResult r;
  r.lower_b = lower_prevision(d, b.indicator(), inner);
  const PrevisionBracket& lb = r.lower_b;
  if (!lb.certified && lb.lo <= kSignEps && lb.hi > kSignEps) {
    throw std::runtime_error("gbr: sign of the lower probability of B is undecided");
  }
  r.gbr_branch = lb.value() > kSignEps;

  auto price = [&](double mu) { return lower_prevision(d, cutoff(f - mu, b), inner); };
  auto strict = [&](double mu) {
    PrevisionBracket p = price(mu);
    if (!p.certified && p.lo <= kSignEps && p.hi > kSignEps) return Verdict::Unknown;
    return p.value() > kSignEps ? Verdict::In : Verdict::Out;
  };
  auto weak = [&](double mu) {
    PrevisionBracket p = price(mu);
    if (!p.certified && p.lo < -kSignEps && p.hi >= -kSignEps) return Verdict::Unknown;
    return p.value() >= -kSignEps ? Verdict::In : Verdict::Out;
  };
  auto member = [&](double mu) { return d.member(cutoff(f - mu, b)).verdict; };

  const double lo = inf_on(f, b) - 1.0, hi = sup_on(f, b) + 1.0;
  if (r.gbr_branch) {
    r.gbr = sup_of_lower_set(strict, lo, hi, outer);
  } else {
    r.gbr.lo = r.gbr.hi = inf_on(f, b);
    r.gbr.width_tol = opt.tol;
    r.gbr.method = "inf-on-event";
  }
  r.member_sup = sup_of_lower_set(member, lo, hi, outer);
  std::tie(r.member_sup.boundary_in, r.member_sup.boundary_point) = boundary_at(member, r.member_sup);
  r.weak_sup = sup_of_lower_set(weak, lo, hi, outer);
  const double slack = 2 * opt.tol;
  r.sandwich_holds = r.gbr.lo <= r.member_sup.hi + slack &&
                     r.member_sup.lo <= r.weak_sup.hi + slack;
  return r;
}

PrevisionBracket conditional_lower_prevision(const DesirSet& cond, const Gamble& f,
                                             const Event& b, const PrevisionOptions& opt) {
  require_same_size(f, cond.dim(), "conditional prevision");
  if (b.empty()) throw std::invalid_argument("conditional prevision: empty event");
  auto pred = [&](double mu) { return cond.member(cutoff(f - mu, b)).verdict; };
  PrevisionBracket r = sup_of_lower_set(pred, inf_on(f, b) - 1.0, sup_on(f, b) + 1.0, opt);
  std::tie(r.boundary_in, r.boundary_point) = boundary_at(pred, r);
  return r;
}

PrevisionBracket marginal_extension_prevision(const DesirSet& marg,
                                              const std::vector<DesirSet>& conds,
                                              const Partition& partition,
                                              const ClosureSpec& spec, const Gamble& f,
                                              const PrevisionOptions& opt) {
  const auto& blocks = partition.blocks();
  if (conds.size() != blocks.size()) {
    throw std::invalid_argument("marginal extension: one conditional set per block");
  }
  if (spec.kind != OperatorKind::Kappa1 && spec.kind != OperatorKind::Kappa4) {
    throw std::invalid_argument(std::string("marginal extension prevision: unsupported ") +
                                to_string(spec.kind));
  }
  require_same_size(f, marg.dim(), "marginal extension");
  const std::size_t n = f.size();
  PrevisionOptions q = quiet(opt);

  std::vector<PrevisionBracket> cond;
  bool certified = true;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    cond.push_back(conditional_lower_prevision(conds[k], f, blocks[k], q));
    certified &= cond.back().certified;
  }
  auto measurable = [&](auto value_of) {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      for (std::size_t i : blocks[k].indices()) v[i] = value_of(k);
    }
    return Gamble(std::move(v));
  };

  PrevisionBracket r;
  r.width_tol = opt.tol;
  if (spec.kind == OperatorKind::Kappa4) {
    r.method = "max-of-marginal-and-conditional";
    Gamble below = measurable([&](std::size_t k) { return inf_on(f, blocks[k]); });
    PrevisionBracket p1 = lower_prevision(marg, below, q);
    double p2lo = kInf, p2hi = kInf;
    for (const auto& c : cond) {
      p2lo = std::min(p2lo, c.lo);
      p2hi = std::min(p2hi, c.hi);
    }
    r.lo = std::max(p1.lo, p2lo);
    r.hi = std::max(p1.hi, p2hi);
    r.certified = certified && p1.certified;
    return r;
  }
  r.method = "marginal-of-conditional";
  Gamble glo = measurable([&](std::size_t k) { return cond[k].lo; });
  Gamble ghi = measurable([&](std::size_t k) { return cond[k].hi; });
  PrevisionBracket a = lower_prevision(marg, glo, q);
  PrevisionBracket c = glo == ghi ? a : lower_prevision(marg, ghi, q);
  r.lo = a.lo;
  r.hi = c.hi;
  r.certified = certified && a.certified && c.certified;
  return r;
}

}  // namespace desir
