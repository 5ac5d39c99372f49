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

#include "desir/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "desir/lp.hpp"
#include "desir/probes.hpp"

namespace desir {

namespace {

Gamble combination(const std::vector<Gamble>& gens, const std::vector<double>& coef,
                   std::size_t n) {
  std::vector<double> v(n, 0.0);
  for (std::size_t j = 0; j < gens.size() && j < coef.size(); ++j) {
    for (std::size_t w = 0; w < n; ++w) v[w] += coef[j] * gens[j][w];
  }
  return Gamble(std::move(v));
}

Gamble warped_combination(const std::vector<Gamble>& gens, const std::vector<double>& coef,
                          const UtilityFn& u, std::size_t n) {
  std::vector<Gamble> warped;
  for (const Gamble& g : gens) warped.push_back(u.apply(g));
  Gamble c = combination(warped, coef, n);
  std::vector<double> v(n);
  for (std::size_t w = 0; w < n; ++w) v[w] = u.inverse(c[w]);
  return Gamble(std::move(v));
}

// A member of the extension that lies below `target`, reconstructed from
// the membership certificate. Falls back to the target itself.
Gamble raw_witness(const DesirSet& d, const Membership& m, const Gamble& target) {
  if (!d.is_generated()) return target;
  const auto& gens = d.generators();
  const ClosureSpec& spec = *d.spec();
  const std::size_t n = d.dim();
  if (m.via == "guard-violated") return target;
  if (m.generator && m.via == "scaling") return gens[*m.generator] * m.coefficients[0];
  if (m.generator) return gens[*m.generator];
  if (m.coefficients.empty()) return target;
  if (spec.kind == OperatorKind::UtilityWarp) {
    try {
      return warped_combination(gens, m.coefficients, *spec.utility, n);
    } catch (const std::domain_error&) {
      return target;
    }
  }
  return combination(gens, m.coefficients, n);
}

// The reconstructed combination carries solver noise (amplified by u⁻¹ for
// warps). Clip it onto the target when the excess is noise, else fall back to
// the target itself, which is a member by construction.
Gamble witness_for(const DesirSet& d, const Membership& m, const Gamble& target) {
  Gamble raw = raw_witness(d, m, target);
  double scale = 1.0 + std::max(raw.max(), -raw.min());
  std::vector<double> w = raw.vector();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= target[i]) continue;
    if (w[i] - target[i] > 1e-5 * scale) return target;
    w[i] = target[i];
  }
  return Gamble(std::move(w));
}

std::string fmt_short(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// max t s.t. Σλg + t <= 0, Σλ = 1, λ >= 0. Returns (t, λ).
std::pair<double, std::vector<double>> sure_loss_lp(const std::vector<Gamble>& gens,
                                                    std::size_t n, double tol) {
  lp::Problem p;
  for (std::size_t j = 0; j < gens.size(); ++j) p.add_variable(0.0, lp::kInf, 0.0);
  std::size_t t = p.add_variable(-lp::kInf, lp::kInf, 1.0);
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<double> row(gens.size() + 1);
    for (std::size_t j = 0; j < gens.size(); ++j) row[j] = gens[j][w];
    row[t] = 1.0;
    p.add_constraint(std::move(row), lp::Relation::LessEq, 0.0);
  }
  std::vector<double> sum(gens.size() + 1, 1.0);
  sum[t] = 0.0;
  p.add_constraint(std::move(sum), lp::Relation::Equal, 1.0);
  lp::Result r = lp::solve(p, {tol});
  if (r.status != lp::Status::Optimal) {
    throw lp::NumericalError("sure-loss LP status " + std::string(lp::to_string(r.status)));
  }
  std::vector<double> lam(r.primal.begin(), r.primal.begin() + static_cast<long>(gens.size()));
  return {r.objective_value, lam};
}

LossVerdict grid_sure_loss(const DesirSet& d, const std::vector<double>& grid) {
  LossVerdict v;
  bool unknown = false;
  for (double eps : grid) {
    Gamble neg = Gamble::constant(d.dim(), -eps);
    Membership m = d.member(neg);
    if (m.in()) {
      v.value = Tri::False;
      v.witness = witness_for(d, m, neg);
      v.notes = "constant -" + std::to_string(eps) + " is a member";
      return v;
    }
    unknown |= m.unknown();
  }
  v.value = unknown ? Tri::Unknown : Tri::True;
  v.notes = unknown ? "membership undecided on part of the grid"
                    : "no negative constant on the grid is a member";
  return v;
}

std::optional<std::size_t> strictly_negative_generator(const std::vector<Gamble>& gens) {
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (gens[j].max() < 0.0) return j;
  }
  return std::nullopt;
}

}  // namespace

const std::vector<double>& default_eps_grid() {
  static const std::vector<double> grid{1e-1, 1e-2, 1e-3, 1e-4, 1e-5,
                                        1e-6, 1e-7, 1e-8, 1e-9};
  return grid;
}

LossVerdict avoids_partial_loss(const DesirSet& d) {
  LossVerdict v;
  Gamble zero = Gamble::zero(d.dim());
  Membership m = d.member(zero);
  if (m.unknown()) {
    v.value = Tri::Unknown;
    v.notes = "membership of 0 undecided (" + m.via + ")";
  } else if (m.in()) {
    v.value = Tri::False;
    v.witness = witness_for(d, m, zero);
    v.notes = "0 is in the extension (" + m.via + ")";
  } else {
    v.value = Tri::True;
    v.notes = "0 is not in the extension";
  }
  return v;
}

LossVerdict avoids_sure_loss(const DesirSet& d, const std::vector<double>& eps_grid) {
  if (!d.is_generated()) return grid_sure_loss(d, eps_grid);
  const auto& gens = d.generators();
  const ClosureSpec& spec = *d.spec();
  const std::size_t n = d.dim();
  LossVerdict v;
  switch (spec.kind) {
    case OperatorKind::Kappa1:
    case OperatorKind::UtilityWarp: {
      if (gens.empty()) {
        v.value = Tri::True;
        v.notes = "no generators";
        return v;
      }
      std::vector<Gamble> work = gens;
      if (spec.kind == OperatorKind::UtilityWarp) {
        for (Gamble& g : work) g = spec.utility->apply(g);
      }
      auto [t, lam] = sure_loss_lp(work, n, spec.tol.lp_tol);
      if (t > spec.tol.lp_tol) {
        v.value = Tri::False;
        v.witness = spec.kind == OperatorKind::Kappa1
                        ? combination(gens, lam, n)
                        : warped_combination(gens, lam, *spec.utility, n);
        v.notes = "a convex combination of generators is bounded by " + std::to_string(-t);
      } else {
        v.value = Tri::True;
        v.notes = "no convex combination of generators is uniformly negative";
      }
      return v;
    }
    case OperatorKind::NegLimit: {
      Membership guard = member_neg_limit(gens, Gamble::constant(n, -1.0),
                                          spec.max_negative_coords);
      if (guard.via == "guard-violated") {
        v.value = Tri::False;
        v.witness = Gamble::constant(n, -1.0);
        v.notes = "generator guard violated; the extension is everything";
        return v;
      }
      [[fallthrough]];
    }
    case OperatorKind::Kappa3:
    case OperatorKind::Kappa4:
    case OperatorKind::PrevisionInduced: {
      if (auto j = strictly_negative_generator(gens)) {
        v.value = Tri::False;
        v.witness = gens[*j];
        v.notes = "generator " + std::to_string(*j) + " has negative supremum";
        return v;
      }
      if (spec.kind == OperatorKind::PrevisionInduced) {
        for (double eps : eps_grid) {
          if ((*spec.functional)(Gamble::constant(n, -eps)) > 0.0) {
            v.value = Tri::False;
            v.witness = Gamble::constant(n, -eps);
            v.notes = "functional is positive on a negative constant";
            return v;
          }
        }
      }
      v.value = Tri::True;
      v.notes = "no generator has negative supremum";
      return v;
    }
    case OperatorKind::Kappa2: {
      // A uniformly negative real combination stays negative after moving λ
      // to a nearby rational and clearing denominators, so the Kappa1 LP
      // decides; the witness is an integer combination checked directly.
      if (gens.empty()) {
        v.value = Tri::True;
        v.notes = "no generators";
        return v;
      }
      auto [t, lam] = sure_loss_lp(gens, n, spec.tol.lp_tol);
      if (t <= spec.tol.lp_tol) {
        v.value = Tri::True;
        v.notes = "no nonnegative combination of generators is uniformly negative";
        return v;
      }
      double spread = 0.0;
      for (const Gamble& g : gens) spread += std::max(g.max(), -g.min());
      double k = std::ceil(spread / t) + 1.0;
      std::vector<double> mult(lam.size());
      for (std::size_t j = 0; j < lam.size(); ++j) mult[j] = std::round(k * lam[j]);
      Gamble w = combination(gens, mult, n);
      if (w.max() >= 0.0) return grid_sure_loss(d, eps_grid);
      v.value = Tri::False;
      v.witness = w;
      v.notes = "an integer combination of generators is bounded by " + fmt_short(w.max());
      return v;
    }
  }
  throw std::logic_error("unhandled operator kind");
}

ConsistencyReport consistency_report(const DesirSet& d) {
  ConsistencyReport r;
  LossVerdict apl = avoids_partial_loss(d);
  LossVerdict asl = avoids_sure_loss(d);
  r.avoids_partial_loss = apl.value;
  r.avoids_sure_loss = asl.value;
  r.witness = asl.witness ? asl.witness : apl.witness;
  r.notes = apl.notes + "; " + asl.notes;
  return r;
}

CoherenceReport is_coherent(const DesirSet& d, int trials, std::uint64_t seed) {
  CoherenceReport rep;
  if (d.is_generated()) {
    LossVerdict apl = avoids_partial_loss(d);
    rep.value = apl.value;
    rep.method = "natural extension coherent iff generators avoid partial loss";
    if (apl.value == Tri::False) rep.failures.push_back(apl.notes);
    return rep;
  }
  rep.method = "sampled K1/K2/K3";
  const std::size_t n = d.dim();
  Sampler s(seed);
  bool unknown = false;
  auto expect = [&](const Gamble& f, bool want, const char* axiom) {
    Membership m = d.member(f);
    if (m.unknown()) {
      unknown = true;
    } else if (m.in() != want) {
      rep.failures.push_back(std::string(axiom) + ": " + f.to_string() +
                             (want ? " should be a member" : " should not be a member"));
    }
  };
  expect(Gamble::zero(n), false, "K2");
  for (int t = 0; t < trials && rep.failures.size() < 5; ++t) {
    expect(s.positive(n), true, "K1");
    expect(-s.nonnegative(n), false, "K2");
  }
  if (const auto& spec = d.spec()) {
    ClosureSpec rule = *spec;
    if (spec->kind == OperatorKind::NegLimit || spec->kind == OperatorKind::PrevisionInduced) {
      rule = ClosureSpec::kappa4();
      // Members must keep the guard / the functional's positive region must
      // be inside.
      for (int t = 0; t < trials && rep.failures.size() < 5; ++t) {
        Gamble f = s.gamble(n);
        if (spec->kind == OperatorKind::NegLimit && d.member(f).in()) {
          long neg = 0;
          for (double x : f.values()) neg += x < 0.0;
          if (neg > spec->max_negative_coords) {
            rep.failures.push_back("K3: member " + f.to_string() +
                                   " violates the negative-coordinate guard");
          }
        }
        if (spec->kind == OperatorKind::PrevisionInduced && (*spec->functional)(f) > 0.0) {
          expect(f, true, "K3");
        }
      }
    }
    if (rep.failures.empty()) {
      if (auto w = find_closure_violation(d, rule, trials, s)) {
        std::string msg = "K3: " + w->rule + " of";
        for (const Gamble& g : w->members) msg += " " + g.to_string();
        msg += " gives non-member " + w->result.to_string();
        rep.failures.push_back(msg);
      }
    }
  } else {
    rep.method += " (no operator attached; K3 skipped)";
  }
  if (!rep.failures.empty()) {
    rep.value = Tri::False;
  } else {
    rep.value = unknown ? Tri::Unknown : Tri::True;
  }
  return rep;
}

RelativeReport coherent_relative(const DesirSet& d, const DesirSet& extension,
                                 const std::function<Gamble(Sampler&)>& q, int trials,
                                 std::uint64_t seed) {
  RelativeReport rep;
  rep.trials = trials;
  Sampler s(seed);
  for (int t = 0; t < trials; ++t) {
    Gamble f = q(s);
    Membership e = extension.member(f);
    if (!e.in()) continue;
    Membership m = d.member(f);
    if (m.unknown()) continue;
    ++rep.checked;
    if (m.out()) rep.flags.push_back(f);
  }
  return rep;
}

DecisivenessResult decisiveness_probe(const DesirSet& d, int trials, std::uint64_t seed,
                                      bool structured) {
  DecisivenessResult res;
  const std::size_t n = d.dim();
  auto test = [&](const Gamble& f) -> bool {
    if (f.is_zero()) return false;
    ++res.tested;
    Membership a = d.member(f);
    Membership b = d.member(-f);
    if (a.unknown() || b.unknown()) {
      ++res.unknowns;
      return false;
    }
    if (a.in() == b.in()) {
      res.counterexample = f;
      res.both = a.in();
      return true;
    }
    return false;
  };
  if (structured && n <= 6) {
    static constexpr double kLevels[] = {1.0, 0.5, 0.0, -0.5, -1.0};
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
      std::vector<double> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = kLevels[idx[i]];
      if (test(Gamble(std::move(v)))) return res;
      std::size_t i = n;
      while (i > 0 && idx[i - 1] == 4) idx[--i] = 0;
      if (i == 0) break;
      ++idx[i - 1];
    }
  }
  Sampler s(seed);
  for (int t = 0; t < trials; ++t) {
    if (test(s.continuous(n))) return res;
  }
  return res;
}

}  // namespace desir
