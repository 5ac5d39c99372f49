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

#include "desir/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "desir/lp.hpp"

namespace desir {

namespace {

constexpr double kSimplexTol = 1e-12;
// Upper limit on multiplicity vectors visited by the κ2 search.
constexpr double kMaxKappa2Combinations = 2e6;

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

bool positive(const Gamble& f) { return classify(f) == GambleClass::Positive; }

}  // namespace

UtilityFn UtilityFn::linear(double slope) {
  if (!(slope > 0.0) || !std::isfinite(slope)) {
    throw std::invalid_argument("linear utility needs a positive slope");
  }
  return UtilityFn(Kind::Linear, slope);
}

UtilityFn UtilityFn::odd_power(double exponent) {
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw std::invalid_argument("odd-power utility needs a positive exponent");
  }
  return UtilityFn(Kind::OddPower, exponent);
}

UtilityFn UtilityFn::cara(double a) {
  if (a == 0.0 || !std::isfinite(a)) {
    throw std::invalid_argument("cara utility needs a nonzero finite coefficient");
  }
  return UtilityFn(Kind::Cara, a);
}

std::string UtilityFn::name() const {
  switch (kind_) {
    case Kind::Linear: return "linear(" + fmt_double(param_) + ")";
    case Kind::OddPower: return "odd-power(" + fmt_double(param_) + ")";
    case Kind::Cara: return "cara(" + fmt_double(param_) + ")";
  }
  return "?";
}

double UtilityFn::operator()(double x) const {
  double y = 0.0;
  switch (kind_) {
    case Kind::Linear: y = param_ * x; break;
    case Kind::OddPower: y = std::copysign(std::pow(std::abs(x), param_), x); break;
    case Kind::Cara: y = -std::expm1(-param_ * x) / param_; break;
  }
  if (!std::isfinite(y)) {
    throw std::domain_error("utility overflow at x=" + fmt_double(x));
  }
  return y;
}

double UtilityFn::inverse(double y) const {
  double x = 0.0;
  switch (kind_) {
    case Kind::Linear: x = y / param_; break;
    case Kind::OddPower:
      x = std::copysign(std::pow(std::abs(y), 1.0 / param_), y);
      break;
    case Kind::Cara:
      if (1.0 - param_ * y <= 0.0) {
        throw std::domain_error("cara utility has no inverse at y=" + fmt_double(y));
      }
      x = -std::log1p(-param_ * y) / param_;
      break;
  }
  if (!std::isfinite(x)) {
    throw std::domain_error("utility inverse overflow at y=" + fmt_double(y));
  }
  return x;
}

Gamble UtilityFn::apply(const Gamble& f) const {
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (*this)(f[i]);
  return Gamble(std::move(v));
}

PriceFunctional PriceFunctional::linear(std::vector<double> p) {
  double s = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("linear prevision needs nonnegative entries");
    }
    s += v;
  }
  if (p.size() < 2 || std::abs(s - 1.0) > kSimplexTol) {
    throw std::invalid_argument("linear prevision must sum to 1");
  }
  return PriceFunctional(Kind::Linear, std::move(p));
}

PriceFunctional PriceFunctional::owa(std::vector<double> weights) {
  double s = 0.0;
  for (double v : weights) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("owa weights must be nonnegative");
    }
    s += v;
  }
  if (weights.size() < 2 || std::abs(s - 1.0) > kSimplexTol) {
    throw std::invalid_argument("owa weights must sum to 1");
  }
  return PriceFunctional(Kind::Owa, std::move(weights));
}

std::string PriceFunctional::name() const {
  std::string out = kind_ == Kind::Linear ? "linear(" : "owa(";
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (i) out += ",";
    out += fmt_double(weights_[i]);
  }
  return out + ")";
}

double PriceFunctional::operator()(const Gamble& f) const {
  require_same_size(f, weights_.size(), "price functional");
  if (kind_ == Kind::Linear) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += weights_[i] * f[i];
    return s;
  }
  std::vector<double> sorted = f.vector();
  std::sort(sorted.begin(), sorted.end());
  double s = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) s += weights_[i] * sorted[i];
  return s;
}

const char* to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::Kappa1: return "kappa1";
    case OperatorKind::Kappa2: return "kappa2";
    case OperatorKind::Kappa3: return "kappa3";
    case OperatorKind::Kappa4: return "kappa4";
    case OperatorKind::UtilityWarp: return "utility-warp";
    case OperatorKind::PrevisionInduced: return "prevision-induced";
    case OperatorKind::NegLimit: return "neg-limit";
  }
  return "?";
}

ClosureSpec ClosureSpec::kappa1() { return {}; }

ClosureSpec ClosureSpec::kappa2(int max_multiplicity) {
  ClosureSpec s;
  s.kind = OperatorKind::Kappa2;
  s.max_multiplicity = max_multiplicity;
  s.validate();
  return s;
}

ClosureSpec ClosureSpec::kappa3() {
  ClosureSpec s;
  s.kind = OperatorKind::Kappa3;
  return s;
}

ClosureSpec ClosureSpec::kappa4() {
  ClosureSpec s;
  s.kind = OperatorKind::Kappa4;
  return s;
}

ClosureSpec ClosureSpec::utility_warp(UtilityFn u) {
  ClosureSpec s;
  s.kind = OperatorKind::UtilityWarp;
  s.utility = u;
  return s;
}

ClosureSpec ClosureSpec::prevision_induced(PriceFunctional f) {
  ClosureSpec s;
  s.kind = OperatorKind::PrevisionInduced;
  s.functional = std::move(f);
  return s;
}

ClosureSpec ClosureSpec::neg_limit(int max_negative_coords) {
  ClosureSpec s;
  s.kind = OperatorKind::NegLimit;
  s.max_negative_coords = max_negative_coords;
  s.validate();
  return s;
}

void ClosureSpec::validate() const {
  if (!(tol.lp_tol > 0.0) || !(tol.strict_margin > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
  if (kind == OperatorKind::Kappa2 && max_multiplicity < 1) {
    throw std::invalid_argument("max_multiplicity must be at least 1");
  }
  if (kind == OperatorKind::NegLimit && max_negative_coords < 0) {
    throw std::invalid_argument("max_negative_coords must be nonnegative");
  }
  if (kind == OperatorKind::UtilityWarp && !utility) {
    throw std::invalid_argument("utility-warp needs a utility function");
  }
  if (kind == OperatorKind::PrevisionInduced && !functional) {
    throw std::invalid_argument("prevision-induced needs a price functional");
  }
}

std::string ClosureSpec::name() const {
  std::string out = to_string(kind);
  switch (kind) {
    case OperatorKind::Kappa2:
      out += "(max_multiplicity=" + std::to_string(max_multiplicity) + ")";
      break;
    case OperatorKind::NegLimit:
      out += "(max_negative_coords=" + std::to_string(max_negative_coords) + ")";
      break;
    case OperatorKind::UtilityWarp: out += "(" + utility->name() + ")"; break;
    case OperatorKind::PrevisionInduced: out += "(" + functional->name() + ")"; break;
    default: break;
  }
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::In: return "In";
    case Verdict::Out: return "Out";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    case Tri::Unknown: return "unknown";
  }
  return "?";
}

Membership from_bool(bool in, const char* via_in, const char* via_out) {
  return in ? Membership::yes(via_in) : Membership::no(via_out);
}

namespace {

void check_dims(std::span<const Gamble> gens, const Gamble& f) {
  for (const Gamble& g : gens) require_same_size(g, f.size(), "generator");
}

// Rows: Σ_j λ_j g_j(ω) <= f(ω), λ >= 0.
lp::Problem cone_problem(std::span<const Gamble> gens, const Gamble& f) {
  lp::Problem p;
  for (std::size_t j = 0; j < gens.size(); ++j) p.add_variable(0.0, lp::kInf, 0.0);
  for (std::size_t w = 0; w < f.size(); ++w) {
    std::vector<double> row(gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) row[j] = gens[j][w];
    p.add_constraint(std::move(row), lp::Relation::LessEq, f[w]);
  }
  return p;
}

}  // namespace

Membership member_kappa1(std::span<const Gamble> gens, const Gamble& f,
                         const Tolerances& tol) {
  check_dims(gens, f);
  if (positive(f)) return Membership::yes("positive");
  if (gens.empty()) return Membership::no("no-generators");
  lp::Options opt{tol.lp_tol};
  if (!f.is_zero()) {
    // f = Σλg + s with s >= 0 and f ≠ 0 forces either s ⪈ 0 or λ ≠ 0, so
    // feasibility alone decides membership. The cone is scale invariant, so
    // the target is normalised to keep far-out bisection probes well posed.
    const double scale = std::max(f.max(), -f.min());
    lp::Problem p = cone_problem(gens, f * (1.0 / scale));
    lp::Result r = lp::solve(p, opt);
    if (r.status == lp::Status::Infeasible) return Membership::no("lp-infeasible");
    if (r.status != lp::Status::Optimal) {
      throw lp::NumericalError("kappa1 membership: LP status " +
                               std::string(lp::to_string(r.status)));
    }
    double slack = 0.0;
    for (std::size_t w = 0; w < f.size(); ++w) {
      double combo = 0.0;
      for (std::size_t j = 0; j < gens.size(); ++j) combo += r.primal[j] * gens[j][w];
      slack = std::max(slack, f[w] / scale - combo);
    }
    Membership m = Membership::yes(slack > tol.strict_margin ? "slack" : "equality");
    m.coefficients = r.primal;
    for (double& c : m.coefficients) c *= scale;
    return m;
  }
  // 0 ∈ κ1(G ∪ L+) iff some nonzero λ gives Σλg <= 0.
  lp::Problem p = cone_problem(gens, f);
  for (auto& b : p.bounds) b.hi = 1.0;
  for (double& c : p.objective) c = 1.0;
  lp::Result r = lp::solve(p, opt);
  if (r.status != lp::Status::Optimal) {
    throw lp::NumericalError("kappa1 membership of zero: LP status " +
                             std::string(lp::to_string(r.status)));
  }
  if (r.objective_value > tol.lp_tol) {
    Membership m = Membership::yes("nonpositive-combination");
    m.coefficients = r.primal;
    return m;
  }
  return Membership::no("no-nonpositive-combination");
}

Membership member_kappa2(std::span<const Gamble> gens, const Gamble& f,
                         int max_multiplicity, const Tolerances& tol) {
  check_dims(gens, f);
  if (max_multiplicity < 1) throw std::invalid_argument("max_multiplicity < 1");
  if (positive(f)) return Membership::yes("positive");
  if (gens.empty()) return Membership::no("no-generators");
  // κ2 ⊆ κ1, so a κ1 refutation is a refutation here too.
  if (member_kappa1(gens, f, tol).out()) return Membership::no("kappa1-refutes");

  // Per-generator caps: any integer solution has n_j <= max λ_j over the
  // relaxation Σλg <= f.
  const std::size_t k = gens.size();
  std::vector<long> cap(k);
  bool complete = true;
  double combos = 1.0;
  for (std::size_t j = 0; j < k; ++j) {
    lp::Problem p = cone_problem(gens, f);
    p.objective[j] = 1.0;
    lp::Result r = lp::solve(p, {tol.lp_tol});
    double u = 0.0;
    if (r.status == lp::Status::Optimal) {
      u = r.objective_value;
    } else if (r.status == lp::Status::Unbounded) {
      u = lp::kInf;
    } else if (r.status == lp::Status::Infeasible) {
      return Membership::no("lp-infeasible");
    } else {
      throw lp::NumericalError("kappa2 cap LP failed");
    }
    if (u > max_multiplicity) {
      complete = false;
      cap[j] = max_multiplicity;
    } else {
      cap[j] = static_cast<long>(std::floor(u + 1e-9));
    }
    combos *= static_cast<double>(cap[j] + 1);
  }
  if (combos > kMaxKappa2Combinations) return Membership::maybe("search-limit");

  double scale = 1.0;
  for (double v : f.values()) scale = std::max(scale, std::abs(v));
  for (const Gamble& g : gens) {
    for (double v : g.values()) scale = std::max(scale, std::abs(v));
  }
  const double slack = 1e-12 * scale;
  std::vector<long> n(k, 0);
  std::vector<double> sum(f.size(), 0.0);
  for (;;) {
    // Odometer increment; the all-zero vector is never tested.
    std::size_t j = 0;
    while (j < k && n[j] == cap[j]) {
      for (std::size_t w = 0; w < f.size(); ++w) sum[w] -= n[j] * gens[j][w];
      n[j] = 0;
      ++j;
    }
    if (j == k) break;
    ++n[j];
    for (std::size_t w = 0; w < f.size(); ++w) sum[w] += gens[j][w];
    bool ok = true;
    for (std::size_t w = 0; w < f.size() && ok; ++w) ok = sum[w] <= f[w] + slack;
    if (ok) {
      Membership m = Membership::yes("multiplicity");
      m.coefficients.assign(n.begin(), n.end());
      return m;
    }
  }
  return complete ? Membership::no("exhausted") : Membership::maybe("bound-exhausted");
}

Membership member_kappa3(std::span<const Gamble> gens, const Gamble& f) {
  check_dims(gens, f);
  if (positive(f)) return Membership::yes("positive");
  for (std::size_t j = 0; j < gens.size(); ++j) {
    const Gamble& g = gens[j];
    double lo = 0.0;
    double hi = lp::kInf;
    bool ok = true;
    for (std::size_t w = 0; w < f.size() && ok; ++w) {
      if (g[w] > 0.0) {
        hi = std::min(hi, f[w] / g[w]);
      } else if (g[w] < 0.0) {
        lo = std::max(lo, f[w] / g[w]);
      } else {
        ok = f[w] >= 0.0;
      }
    }
    if (!ok || !(hi > 0.0)) continue;
    double lambda = lo > 0.0 ? lo : std::min(hi, 1.0);
    if (lo > 0.0 && lo > hi + 1e-12 * std::max(1.0, std::abs(hi))) continue;
    Membership m = Membership::yes("scaling");
    m.coefficients = {lambda};
    m.generator = j;
    return m;
  }
  return Membership::no("no-scaling");
}

Membership member_kappa4(std::span<const Gamble> gens, const Gamble& f) {
  check_dims(gens, f);
  if (positive(f)) return Membership::yes("positive");
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (dominates(f, gens[j])) {
      Membership m = Membership::yes("dominance");
      m.generator = j;
      return m;
    }
  }
  return Membership::no("no-dominated-generator");
}

Membership member_utility_warp(std::span<const Gamble> gens, const Gamble& f,
                               const UtilityFn& u, const Tolerances& tol) {
  check_dims(gens, f);
  if (positive(f)) return Membership::yes("positive");
  std::vector<Gamble> warped;
  warped.reserve(gens.size());
  for (const Gamble& g : gens) warped.push_back(u.apply(g));
  Gamble uf;
  try {
    uf = u.apply(f);
  } catch (const std::domain_error&) {
    // A warped cone holding a uniformly negative gamble holds everything.
    if (member_kappa1(warped, Gamble::constant(f.size(), -1.0), tol).in()) {
      return Membership::yes("warped-sure-loss");
    }
    return Membership::maybe("utility overflow");
  }
  Membership m = member_kappa1(warped, uf, tol);
  if (m.via != "positive") m.via = "warped-" + m.via;
  return m;
}

Membership member_prevision_induced(std::span<const Gamble> gens,
                                    const PriceFunctional& F, const Gamble& f) {
  check_dims(gens, f);
  if (positive(f)) return Membership::yes("positive");
  if (F(f) > 0.0) return Membership::yes("functional");
  Membership m = member_kappa4(gens, f);
  if (m.out()) m.via = "functional-nonpositive";
  return m;
}

Membership member_neg_limit(std::span<const Gamble> gens, const Gamble& f,
                            int max_negative_coords) {
  check_dims(gens, f);
  for (std::size_t j = 0; j < gens.size(); ++j) {
    long neg = std::count_if(gens[j].values().begin(), gens[j].values().end(),
                             [](double v) { return v < 0.0; });
    if (neg > max_negative_coords) {
      Membership m = Membership::yes("guard-violated");
      m.generator = j;
      return m;
    }
  }
  return member_kappa4(gens, f);
}

Membership member_generated(std::span<const Gamble> gens, const ClosureSpec& spec,
                            const Gamble& f) {
  switch (spec.kind) {
    case OperatorKind::Kappa1: return member_kappa1(gens, f, spec.tol);
    case OperatorKind::Kappa2:
      return member_kappa2(gens, f, spec.max_multiplicity, spec.tol);
    case OperatorKind::Kappa3: return member_kappa3(gens, f);
    case OperatorKind::Kappa4: return member_kappa4(gens, f);
    case OperatorKind::UtilityWarp:
      return member_utility_warp(gens, f, *spec.utility, spec.tol);
    case OperatorKind::PrevisionInduced:
      return member_prevision_induced(gens, *spec.functional, f);
    case OperatorKind::NegLimit:
      return member_neg_limit(gens, f, spec.max_negative_coords);
  }
  throw std::logic_error("unhandled operator kind");
}

}  // namespace desir
