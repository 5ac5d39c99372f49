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

// Credal sets: linear previsions nonnegative on a set of gambles.
//
// A linear prevision P is monotone and additive, so P >= 0 on E_κ(G) iff
// P >= 0 on G for every κ among Kappa1..Kappa4: sums, positive scalings and
// dominance all preserve P >= 0. The polytope of a generated set is
// therefore cut out by its generators alone.

#ifndef DESIR_CREDAL_HPP_
#define DESIR_CREDAL_HPP_

#include <optional>
#include <string>
#include <vector>

#include "desir/desir_set.hpp"
#include "desir/previsions.hpp"

namespace desir {

struct LinearPrevision {
  std::vector<double> p;

  // Throws std::invalid_argument unless p >= 0 and sums to 1 (1e-12).
  explicit LinearPrevision(std::vector<double> p);
  double operator()(const Gamble& f) const;
  std::size_t size() const { return p.size(); }
};

struct CredalPolytope {
  std::size_t dim = 0;
  // p·g >= 0 for every g, on top of the probability simplex.
  std::vector<Gamble> constraints;

  bool contains(const std::vector<double>& p, double tol = 1e-9) const;
};

// Generated sets under Kappa1..Kappa4; throws std::invalid_argument for other
// forms and kinds.
CredalPolytope credal_intersection(const DesirSet& d);

struct EmptinessResult {
  bool empty = false;
  // Nonempty: the member closest to the uniform prevision in sup norm.
  std::optional<LinearPrevision> member;
  // Empty: weights on the constraints (smallest positive weight 1) whose
  // combination is uniformly negative, and that combination.
  std::vector<double> weights;
  std::optional<Gamble> combination;
  // Empty: the solver's Farkas vector over the rows Σ p = 1, then
  // p·g_j >= 0 in order, with p in [0, 1].
  std::vector<double> farkas;
};

// Throws lp::NumericalError when the LP cannot decide.
EmptinessResult is_empty(const CredalPolytope& c);

// Vertices by double description on the nonnegative orthant, scaled to sum
// 1 and deduplicated at 1e-9. Throws std::invalid_argument for dim > 5.
std::vector<LinearPrevision> vertices(const CredalPolytope& c);

// min p·f over the polytope; +inf when it is empty.
double credal_lower(const CredalPolytope& c, const Gamble& f);

struct CredalEntry {
  Gamble f;
  CredalPolytope m;
};

struct CredalConsistencyReport {
  std::vector<double> lower;  // P̲(f) per entry
  LprCheck sure_loss;
  LprCheck coherence;
};

// P̲(f) = min over M_f of P(f); the family {f - P̲(f)} is then judged by the
// lower prevision checks under spec. An empty M_f prices f at +inf, which
// is a sure loss.
CredalConsistencyReport credal_family_consistency(const std::vector<CredalEntry>& family,
                                                  const ClosureSpec& spec);

// Entries whose gamble is measurable, or vanishes outside b.
std::vector<CredalEntry> marginal_entries(const std::vector<CredalEntry>& family,
                                          const Partition& p);
std::vector<CredalEntry> conditional_entries(const std::vector<CredalEntry>& family,
                                             const Event& b);

}  // namespace desir

#endif  // DESIR_CREDAL_HPP_
