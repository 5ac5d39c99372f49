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

#include "desir/lp.hpp"

#include <algorithm>
#include <cmath>

namespace desir::lp {

const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "Optimal";
    case Status::Infeasible: return "Infeasible";
    case Status::Unbounded: return "Unbounded";
    case Status::NumericalFailure: return "NumericalFailure";
  }
  return "?";
}

std::size_t Problem::add_variable(double lo, double hi, double obj) {
  if (bounds.size() < objective.size()) bounds.resize(objective.size());
  objective.push_back(obj);
  bounds.push_back({lo, hi});
  for (Constraint& c : constraints) c.coeffs.resize(objective.size(), 0.0);
  return objective.size() - 1;
}

void Problem::add_constraint(std::vector<double> coeffs, Relation rel,
                             double rhs) {
  coeffs.resize(num_vars(), 0.0);
  constraints.push_back({std::move(coeffs), rel, rhs});
}

namespace {

// x_j = offset + sum over (column, coefficient) of the standard-form columns.
struct VarMap {
  double offset = 0.0;
  std::vector<std::pair<std::size_t, double>> terms;
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  // Row `rows_` holds the reduced costs; its rhs slot holds -objective.
  double& cost(std::size_t c) { return at(rows_, c); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t pr, std::size_t pc) {
    double p = at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= p;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

enum class Phase { Done, Unbounded, PivotLimit };

// Bland's rule on the reduced-cost row (minimisation). Columns with
// `allowed[c] == false` never enter.
Phase run_simplex(Tableau& t, std::vector<std::size_t>& basis,
                  const std::vector<bool>& allowed, double tol,
                  std::size_t& pivots, std::size_t max_pivots) {
  for (;;) {
    std::size_t enter = t.cols();
    for (std::size_t c = 0; c < t.cols(); ++c) {
      if (allowed[c] && t.cost(c) < -tol) {
        enter = c;
        break;
      }
    }
    if (enter == t.cols()) return Phase::Done;
    std::size_t leave = t.rows();
    double best = 0.0;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      double a = t.at(r, enter);
      if (a <= tol) continue;
      double ratio = t.rhs(r) / a;
      if (leave == t.rows() || ratio < best - tol ||
          (ratio <= best + tol && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == t.rows()) return Phase::Unbounded;
    if (++pivots > max_pivots) return Phase::PivotLimit;
    t.pivot(leave, enter);
    basis[leave] = enter;
  }
}

double row_scale(const std::vector<double>& a, double b) {
  double s = std::abs(b);
  for (double v : a) s = std::max(s, std::abs(v));
  return std::max(1.0, s);
}

}  // namespace

namespace {
Result solve_once(const Problem& problem, const Options& options);
}

Result solve(const Problem& problem, const Options& options) {
  // Borderline problems (infeasible by about tol) yield neither a feasible
  // point nor a Farkas certificate at tol; they separate at a finer one.
  Options o = options;
  Result r = solve_once(problem, o);
  std::size_t pivots = r.pivots;
  for (int retry = 0; retry < 2 && r.status == Status::NumericalFailure && o.tol > 1e-13;
       ++retry) {
    o.tol *= 1e-2;
    r = solve_once(problem, o);
    pivots += r.pivots;
  }
  r.pivots = pivots;
  return r;
}

namespace {

Result solve_once(const Problem& problem, const Options& options) {
  const double tol = options.tol;
  const std::size_t n = problem.num_vars();
  Result result;

  std::vector<VarBounds> bounds = problem.bounds;
  bounds.resize(n);
  for (const Constraint& c : problem.constraints) {
    if (c.coeffs.size() != n) {
      throw std::invalid_argument("lp: constraint width does not match variables");
    }
  }

  // Empty box: the zero certificate already proves infeasibility.
  for (const VarBounds& b : bounds) {
    if (b.lo > b.hi) {
      result.status = Status::Infeasible;
      result.farkas = std::vector<double>(problem.constraints.size(), 0.0);
      return result;
    }
  }

  // Standard form: every column nonnegative.
  std::vector<VarMap> maps(n);
  std::size_t ncols = 0;
  struct UpperRow {
    std::size_t col;
    double cap;
  };
  std::vector<UpperRow> upper_rows;
  for (std::size_t j = 0; j < n; ++j) {
    const VarBounds& b = bounds[j];
    if (std::isfinite(b.lo)) {
      maps[j].offset = b.lo;
      maps[j].terms.push_back({ncols, 1.0});
      if (std::isfinite(b.hi)) upper_rows.push_back({ncols, b.hi - b.lo});
      ++ncols;
    } else if (std::isfinite(b.hi)) {
      maps[j].offset = b.hi;
      maps[j].terms.push_back({ncols++, -1.0});
    } else {
      maps[j].terms.push_back({ncols++, 1.0});
      maps[j].terms.push_back({ncols++, -1.0});
    }
  }
  const std::size_t nstruct = ncols;

  struct Row {
    std::vector<double> a;
    Relation rel;
    double b;
    double sign = 1.0;
  };
  std::vector<Row> rows;
  rows.reserve(problem.constraints.size() + upper_rows.size());
  for (const Constraint& c : problem.constraints) {
    Row r{std::vector<double>(nstruct, 0.0), c.rel, c.rhs};
    for (std::size_t j = 0; j < n; ++j) {
      r.b -= c.coeffs[j] * maps[j].offset;
      for (auto [col, k] : maps[j].terms) r.a[col] += c.coeffs[j] * k;
    }
    rows.push_back(std::move(r));
  }
  for (const UpperRow& u : upper_rows) {
    Row r{std::vector<double>(nstruct, 0.0), Relation::LessEq, u.cap};
    r.a[u.col] = 1.0;
    rows.push_back(std::move(r));
  }
  for (Row& r : rows) {
    if (r.b < 0.0) {
      r.sign = -1.0;
      r.b = -r.b;
      for (double& v : r.a) v = -v;
      if (r.rel == Relation::LessEq) {
        r.rel = Relation::GreaterEq;
      } else if (r.rel == Relation::GreaterEq) {
        r.rel = Relation::LessEq;
      }
    }
  }

  // Column layout: structural | slack/surplus | artificial.
  const std::size_t m = rows.size();
  std::vector<std::size_t> slack_col(m, SIZE_MAX);
  std::vector<std::size_t> art_col(m, SIZE_MAX);
  std::size_t next = nstruct;
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].rel != Relation::Equal) slack_col[i] = next++;
  }
  const std::size_t first_art = next;
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].rel != Relation::LessEq) art_col[i] = next++;
  }
  const std::size_t total = next;

  Tableau t(m, total);
  std::vector<std::size_t> basis(m);
  std::vector<std::size_t> init_col(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t c = 0; c < nstruct; ++c) t.at(i, c) = rows[i].a[c];
    if (slack_col[i] != SIZE_MAX) {
      t.at(i, slack_col[i]) = rows[i].rel == Relation::LessEq ? 1.0 : -1.0;
    }
    if (art_col[i] != SIZE_MAX) t.at(i, art_col[i]) = 1.0;
    t.rhs(i) = rows[i].b;
    basis[i] = art_col[i] != SIZE_MAX ? art_col[i] : slack_col[i];
    init_col[i] = basis[i];
  }

  // Phase 1: minimise the sum of artificials.
  for (std::size_t i = 0; i < m; ++i) {
    if (art_col[i] == SIZE_MAX) continue;
    for (std::size_t c = 0; c <= total; ++c) {
      if (c < first_art) t.cost(c) -= t.at(i, c);
    }
    t.at(m, total) -= t.rhs(i);
  }
  std::vector<bool> allowed(total, true);
  Phase ph = run_simplex(t, basis, allowed, tol, result.pivots,
                         options.max_pivots);
  if (ph == Phase::PivotLimit) return result;
  if (ph == Phase::Unbounded) return result;  // cannot happen in phase 1

  double rhs_scale = 1.0;
  for (const Row& r : rows) rhs_scale = std::max(rhs_scale, r.b);
  double infeas = -t.at(m, total);
  if (infeas > tol * rhs_scale) {
    // Duals of phase 1 from the reduced costs of the initial basis columns:
    // d_c = c_c - pi . A_c, and A_c is the unit vector e_i.
    std::vector<double> pi(m);
    for (std::size_t i = 0; i < m; ++i) {
      double c1 = init_col[i] >= first_art ? 1.0 : 0.0;
      pi[i] = c1 - t.cost(init_col[i]);
    }
    std::vector<double> y(problem.constraints.size());
    double norm = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] = rows[i].sign * pi[i];
      norm = std::max(norm, std::abs(y[i]));
    }
    if (norm > 0.0) {
      for (double& v : y) v /= norm;
    }
    for (std::size_t i = 0; i < y.size(); ++i) {
      // Clean sign noise against the row relation.
      Relation rel = problem.constraints[i].rel;
      if (rel == Relation::GreaterEq && y[i] < 0.0 && y[i] > -tol) y[i] = 0.0;
      if (rel == Relation::LessEq && y[i] > 0.0 && y[i] < tol) y[i] = 0.0;
    }
    if (!verify_farkas(problem, y, tol)) return result;
    result.status = Status::Infeasible;
    result.farkas = std::move(y);
    return result;
  }

  // Drive zero-level artificials out of the basis where possible.
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < first_art) continue;
    std::size_t best = total;
    double mag = tol;
    for (std::size_t c = 0; c < first_art; ++c) {
      if (std::abs(t.at(i, c)) > mag) {
        mag = std::abs(t.at(i, c));
        best = c;
      }
    }
    if (best != total) {
      t.pivot(i, best);
      basis[i] = best;
    }
  }

  // Phase 2 costs in minimisation form.
  std::vector<double> c2(total, 0.0);
  double c2_offset = 0.0;
  double dir = problem.sense == Sense::Maximize ? -1.0 : 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    double cj = dir * problem.objective[j];
    c2_offset += cj * maps[j].offset;
    for (auto [col, k] : maps[j].terms) c2[col] += cj * k;
  }
  for (std::size_t c = 0; c <= total; ++c) t.cost(c) = c < total ? c2[c] : 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double cb = c2[basis[i]];
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c <= total; ++c) t.cost(c) -= cb * t.at(i, c);
  }
  for (std::size_t c = first_art; c < total; ++c) allowed[c] = false;
  ph = run_simplex(t, basis, allowed, tol, result.pivots, options.max_pivots);
  if (ph == Phase::PivotLimit) return result;
  if (ph == Phase::Unbounded) {
    result.status = Status::Unbounded;
    return result;
  }

  std::vector<double> xs(total, 0.0);
  for (std::size_t i = 0; i < m; ++i) xs[basis[i]] = std::max(0.0, t.rhs(i));
  result.primal.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double v = maps[j].offset;
    for (auto [col, k] : maps[j].terms) v += k * xs[col];
    // Snap back into the box; the tableau can drift by rounding.
    v = std::clamp(v, bounds[j].lo, bounds[j].hi);
    result.primal[j] = v;
  }
  (void)c2_offset;

  // Re-check feasibility against the original rows.
  for (const Constraint& c : problem.constraints) {
    double lhs = 0.0;
    double scale = std::abs(c.rhs);
    for (std::size_t j = 0; j < n; ++j) {
      lhs += c.coeffs[j] * result.primal[j];
      scale = std::max(scale, std::abs(c.coeffs[j] * result.primal[j]));
    }
    double slack = tol * 10.0 * std::max(1.0, scale);
    bool ok = true;
    if (c.rel == Relation::LessEq) ok = lhs <= c.rhs + slack;
    if (c.rel == Relation::GreaterEq) ok = lhs >= c.rhs - slack;
    if (c.rel == Relation::Equal) ok = std::abs(lhs - c.rhs) <= slack;
    if (!ok) return result;
  }

  double obj = 0.0;
  for (std::size_t j = 0; j < n; ++j) obj += problem.objective[j] * result.primal[j];
  result.objective_value = obj;
  result.status = Status::Optimal;
  return result;
}

}  // namespace

bool verify_farkas(const Problem& problem, std::span<const double> y,
                   double tol) {
  const std::size_t n = problem.num_vars();
  if (y.size() != problem.constraints.size()) return false;
  std::vector<VarBounds> bounds = problem.bounds;
  bounds.resize(n);
  for (const VarBounds& b : bounds) {
    if (b.lo > b.hi) return true;
  }
  double yb = 0.0;
  double ynorm = 0.0;
  std::vector<double> r(n, 0.0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const Constraint& c = problem.constraints[i];
    if (c.rel == Relation::GreaterEq && y[i] < 0.0) return false;
    if (c.rel == Relation::LessEq && y[i] > 0.0) return false;
    yb += y[i] * c.rhs;
    ynorm = std::max(ynorm, std::abs(y[i]) * row_scale(c.coeffs, c.rhs));
    for (std::size_t j = 0; j < n; ++j) r[j] += y[i] * c.coeffs[j];
  }
  if (ynorm == 0.0) return false;
  double noise = tol * ynorm;
  double sup = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(r[j]) <= noise) {
      // Negligible coefficient; only bounded directions may absorb it.
      double mag = std::max(std::abs(bounds[j].lo), std::abs(bounds[j].hi));
      if (std::isfinite(mag)) sup += std::abs(r[j]) * mag;
      continue;
    }
    if (r[j] > 0.0) {
      if (!std::isfinite(bounds[j].hi)) return false;
      sup += r[j] * bounds[j].hi;
    } else {
      if (!std::isfinite(bounds[j].lo)) return false;
      sup += r[j] * bounds[j].lo;
    }
  }
  return yb - sup > 0.5 * tol;
}

}  // namespace desir::lp
