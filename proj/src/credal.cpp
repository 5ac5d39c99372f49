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

#include "desir/credal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "desir/lp.hpp"

namespace desir {

LinearPrevision::LinearPrevision(std::vector<double> values) : p(std::move(values)) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw std::invalid_argument("linear prevision: negative mass");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("linear prevision: masses sum to " + std::to_string(sum));
  }
}

double LinearPrevision::operator()(const Gamble& f) const {
  require_same_size(f, p.size(), "gamble");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * f[i];
  return s;
}

bool CredalPolytope::contains(const std::vector<double>& p, double tol) const {
  if (p.size() != dim) return false;
  double sum = 0.0;
  for (double v : p) {
    if (v < -tol) return false;
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol) return false;
  for (const Gamble& g : constraints) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) s += p[i] * g[i];
    if (s < -tol) return false;
  }
  return true;
}

CredalPolytope credal_intersection(const DesirSet& d) {
  if (!d.is_generated()) {
    throw std::invalid_argument("credal intersection needs a generated set");
  }
  switch (d.spec()->kind) {
    case OperatorKind::Kappa1:
    case OperatorKind::Kappa2:
    case OperatorKind::Kappa3:
    case OperatorKind::Kappa4: break;
    default:
      throw std::invalid_argument("credal intersection is not supported for " +
                                  d.spec()->name());
  }
  return CredalPolytope{d.dim(), d.generators()};
}

namespace {

void check_polytope(const CredalPolytope& c) {
  if (c.dim == 0) throw std::invalid_argument("credal polytope on an empty space");
  for (const Gamble& g : c.constraints) {
    require_same_size(g, c.dim, "constraint");
    for (double v : g.vector()) {
      if (!std::isfinite(v)) throw std::invalid_argument("constraint is not finite");
    }
  }
}

// Simplex rows plus p·g >= 0; returns the index of the first p variable (0).
lp::Problem simplex_problem(const CredalPolytope& c) {
  lp::Problem p;
  for (std::size_t i = 0; i < c.dim; ++i) p.add_variable(0.0, 1.0, 0.0);
  p.add_constraint(std::vector<double>(c.dim, 1.0), lp::Relation::Equal, 1.0);
  for (const Gamble& g : c.constraints) {
    p.add_constraint(g.vector(), lp::Relation::GreaterEq, 0.0);
  }
  return p;
}

std::vector<double> clean_masses(std::vector<double> p) {
  for (double& v : p) v = std::max(v, 0.0);
  double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v /= s;
  return p;
}

}  // namespace

EmptinessResult is_empty(const CredalPolytope& c) {
  check_polytope(c);
  EmptinessResult r;
  const std::size_t n = c.dim;

  lp::Problem feas = simplex_problem(c);
  std::size_t dvar = feas.add_variable(0.0, lp::kInf, 1.0);
  feas.sense = lp::Sense::Minimize;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> up(n + 1, 0.0), down(n + 1, 0.0);
    up[i] = 1.0;
    up[dvar] = -1.0;
    down[i] = 1.0;
    down[dvar] = 1.0;
    feas.add_constraint(std::move(up), lp::Relation::LessEq, 1.0 / static_cast<double>(n));
    feas.add_constraint(std::move(down), lp::Relation::GreaterEq, 1.0 / static_cast<double>(n));
  }
  lp::Result fr = lp::solve(feas);
  if (fr.status == lp::Status::Optimal) {
    r.member = LinearPrevision(
        clean_masses(std::vector<double>(fr.primal.begin(), fr.primal.begin() + static_cast<long>(n))));
    return r;
  }
  if (fr.status != lp::Status::Infeasible) {
    throw lp::NumericalError(std::string("credal feasibility: LP status ") +
                             lp::to_string(fr.status));
  }
  r.empty = true;
  lp::Result plain = lp::solve(simplex_problem(c));
  if (plain.status == lp::Status::Infeasible && plain.farkas) r.farkas = *plain.farkas;

  // Separation certificate: max t with Σ λ_j g_j <= -t and Σ λ_j = 1.
  const std::size_t m = c.constraints.size();
  lp::Problem sep;
  for (std::size_t j = 0; j < m; ++j) sep.add_variable(0.0, lp::kInf, 0.0);
  std::size_t t = sep.add_variable(-lp::kInf, 1e6, 1.0);
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<double> row(m + 1);
    for (std::size_t j = 0; j < m; ++j) row[j] = c.constraints[j][w];
    row[t] = 1.0;
    sep.add_constraint(std::move(row), lp::Relation::LessEq, 0.0);
  }
  std::vector<double> ones(m + 1, 1.0);
  ones[t] = 0.0;
  sep.add_constraint(std::move(ones), lp::Relation::Equal, 1.0);
  lp::Result sr = lp::solve(sep);
  if (sr.status != lp::Status::Optimal) {
    throw lp::NumericalError(std::string("credal separation: LP status ") +
                             lp::to_string(sr.status));
  }
  double smallest = lp::kInf;
  for (std::size_t j = 0; j < m; ++j) {
    if (sr.primal[j] > 1e-12) smallest = std::min(smallest, sr.primal[j]);
  }
  std::vector<double> combo(n, 0.0);
  r.weights.assign(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    if (sr.primal[j] <= 1e-12) continue;
    r.weights[j] = sr.primal[j] / smallest;
    for (std::size_t w = 0; w < n; ++w) combo[w] += r.weights[j] * c.constraints[j][w];
  }
  r.combination = Gamble(std::move(combo));
  return r;
}

namespace {

struct Ray {
  std::vector<double> v;
  std::vector<bool> zero;  // active constraints: orthant faces, then cuts
};

std::size_t count(const std::vector<bool>& z) {
  return static_cast<std::size_t>(std::count(z.begin(), z.end(), true));
}

std::vector<bool> meet(const std::vector<bool>& a, const std::vector<bool>& b) {
  std::vector<bool> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
  return out;
}

bool subset(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && !b[i]) return false;
  }
  return true;
}

void normalise(std::vector<double>& v) {
  double s = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= s;
}

}  // namespace

std::vector<LinearPrevision> vertices(const CredalPolytope& c) {
  check_polytope(c);
  const std::size_t n = c.dim;
  if (n > 5) throw std::invalid_argument("vertex enumeration is limited to 5 outcomes");
  const std::size_t faces = n + c.constraints.size();
  constexpr double kZero = 1e-12;

  std::vector<Ray> rays;
  for (std::size_t i = 0; i < n; ++i) {
    Ray r{std::vector<double>(n, 0.0), std::vector<bool>(faces, false)};
    r.v[i] = 1.0;
    for (std::size_t k = 0; k < n; ++k) r.zero[k] = k != i;
    rays.push_back(std::move(r));
  }

  for (std::size_t j = 0; j < c.constraints.size(); ++j) {
    const std::size_t face = n + j;
    Gamble g = c.constraints[j];
    double scale = std::max(g.max(), -g.min());
    std::vector<double> val(rays.size(), 0.0);
    for (std::size_t k = 0; k < rays.size(); ++k) {
      for (std::size_t i = 0; i < n; ++i) val[k] += rays[k].v[i] * g[i];
      if (std::abs(val[k]) <= kZero * std::max(scale, 1.0)) val[k] = 0.0;
    }
    std::vector<Ray> next;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (val[k] < 0) continue;
      Ray r = rays[k];
      if (val[k] == 0) r.zero[face] = true;
      next.push_back(std::move(r));
    }
    for (std::size_t a = 0; a < rays.size(); ++a) {
      if (val[a] <= 0) continue;
      for (std::size_t b = 0; b < rays.size(); ++b) {
        if (val[b] >= 0) continue;
        std::vector<bool> common = meet(rays[a].zero, rays[b].zero);
        if (count(common) + 2 < n) continue;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k != a && k != b && subset(common, rays[k].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray r{std::vector<double>(n), common};
        for (std::size_t i = 0; i < n; ++i) {
          r.v[i] = val[a] * rays[b].v[i] - val[b] * rays[a].v[i];
        }
        normalise(r.v);
        r.zero[face] = true;
        next.push_back(std::move(r));
      }
    }
    rays = std::move(next);
    if (rays.empty()) break;
  }

  std::vector<LinearPrevision> out;
  for (Ray& r : rays) {
    normalise(r.v);
    bool dup = false;
    for (const LinearPrevision& q : out) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(q.p[i] - r.v[i]));
      dup |= d <= 1e-9;
    }
    if (!dup) out.emplace_back(clean_masses(r.v));
  }
  return out;
}

double credal_lower(const CredalPolytope& c, const Gamble& f) {
  check_polytope(c);
  require_same_size(f, c.dim, "gamble");
  lp::Problem p = simplex_problem(c);
  p.sense = lp::Sense::Minimize;
  for (std::size_t i = 0; i < c.dim; ++i) p.objective[i] = f[i];
  lp::Result r = lp::solve(p);
  if (r.status == lp::Status::Infeasible) return lp::kInf;
  if (r.status != lp::Status::Optimal) {
    throw lp::NumericalError(std::string("credal lower prevision: LP status ") +
                             lp::to_string(r.status));
  }
  return r.objective_value;
}

CredalConsistencyReport credal_family_consistency(const std::vector<CredalEntry>& family,
                                                  const ClosureSpec& spec) {
  CredalConsistencyReport rep;
  for (const CredalEntry& e : family) rep.lower.push_back(credal_lower(e.m, e.f));
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (std::isfinite(rep.lower[i])) continue;
    LprCheck c;
    c.value = Tri::False;
    c.criterion = "empty-credal-set";
    c.witness = {family[i].f};
    c.multipliers = {1.0};
    c.notes = "no linear prevision in the credal set";
    rep.sure_loss = c;
    rep.coherence = c;
    return rep;
  }
  std::vector<Gamble> gambles;
  for (const CredalEntry& e : family) gambles.push_back(e.f);
  std::vector<double> prices = rep.lower;
  LowerPrevisionFn lower = [gambles, prices](const Gamble& f) {
    for (std::size_t i = 0; i < gambles.size(); ++i) {
      if (gambles[i] == f) return prices[i];
    }
    throw std::invalid_argument("gamble " + f.to_string() + " is not in the family");
  };
  rep.sure_loss = lpr_avoids_sure_loss(lower, gambles, spec);
  rep.coherence = lpr_coherent(lower, gambles, spec);
  return rep;
}

std::vector<CredalEntry> marginal_entries(const std::vector<CredalEntry>& family,
                                          const Partition& p) {
  std::vector<CredalEntry> out;
  for (const CredalEntry& e : family) {
    if (is_measurable(e.f, p)) out.push_back(e);
  }
  return out;
}

std::vector<CredalEntry> conditional_entries(const std::vector<CredalEntry>& family,
                                             const Event& b) {
  std::vector<CredalEntry> out;
  for (const CredalEntry& e : family) {
    if (cutoff(e.f, b) == e.f) out.push_back(e);
  }
  return out;
}

}  // namespace desir
