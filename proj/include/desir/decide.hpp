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

// Choosing among finitely many options J under a set of desirable gambles.
//
// The price-based criteria compare sets of acceptable prices, not just
// their bounds:
//   gamma-maximin       f out iff ∃g, μ: g - μ ∈ D, f - μ ∉ D
//   gamma-maximax       f out iff ∃g, μ: μ - f ∈ D, μ - g ∉ D
//   interval-dominance  f out iff ∃g, μ: μ - f ∈ D, g - μ ∈ D
// Every rejection carries the price μ, with the two memberships checked.
// An option is never compared with itself.

#ifndef DESIR_DECIDE_HPP_
#define DESIR_DECIDE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "desir/consistency.hpp"
#include "desir/previsions.hpp"

namespace desir {

struct DecideOptions {
  // Previsions closer than this are ties, settled by boundary membership.
  double tie_tol = 1e-8;
  PrevisionOptions prevision{1e-10, 80, false};
};

struct Rejection {
  std::size_t option = 0;
  // The dominating option; absent for e-admissibility.
  std::optional<std::size_t> by;
  std::optional<double> price;
  std::string detail;
};

struct DecisionReport {
  std::string criterion;
  bool available = true;
  std::vector<std::size_t> optimal;  // indices into J, ascending
  std::vector<Rejection> rejected;
  bool ties_resolved_by_boundary = false;
  // Comparisons that could not be decided; the option was kept.
  std::vector<std::string> notes;

  bool is_optimal(std::size_t i) const;
};

DecisionReport gamma_maximin(const DesirSet& d, const std::vector<Gamble>& options,
                             const DecideOptions& opt = {});
DecisionReport gamma_maximax(const DesirSet& d, const std::vector<Gamble>& options,
                             const DecideOptions& opt = {});
DecisionReport interval_dominance(const DesirSet& d, const std::vector<Gamble>& options,
                                  const DecideOptions& opt = {});

// f optimal iff P̲(g - f) <= tol for every g, with P̲ the natural extension
// of gens under Kappa1 (one LP per pair).
DecisionReport maximality_kappa1(const std::vector<Gamble>& gens,
                                 const std::vector<Gamble>& options, double tol = 1e-9);
// f optimal iff some p in the credal set of gens has p·f >= p·g for all g.
// Unavailable when the credal set is empty.
DecisionReport e_admissible_kappa1(const std::vector<Gamble>& gens,
                                   const std::vector<Gamble>& options);

// The quantifiers over decisive supersets of D, evaluated over the finite
// family supplied. The family is trusted to consist of decisive supersets.
// Unavailable without one.
DecisionReport generic_maximality(const DesirSet& d, const std::vector<Gamble>& options,
                                  const std::optional<std::vector<DesirSet>>& supersets,
                                  const DecideOptions& opt = {});
DecisionReport generic_e_admissibility(const DesirSet& d, const std::vector<Gamble>& options,
                                       const std::optional<std::vector<DesirSet>>& supersets,
                                       const DecideOptions& opt = {});

struct AllaisReport {
  std::string set;  // description of the OWA-induced set
  std::vector<Gamble> options;     // f1..f4
  std::vector<double> previsions;  // lower previsions
  std::vector<double> upper;
  DecisionReport experiment1;      // {f1, f2}
  DecisionReport experiment2;      // {f3, f4}
  bool prefers_f1 = false;
  bool prefers_f4 = false;
  // f2 - μ1 ∉ D, f3 - μ2 ∉ D, f4 - μ2 ∈ D for the chosen prices.
  bool price_conditions = false;
  double mu1 = 0.96;
  double mu2 = 0.7;
  double eps = 0.01;
  std::vector<Gamble> summands;
  bool summands_desirable = false;
  Gamble sum;
  GambleClass sum_class = GambleClass::Other;
  // The Kappa1 closure of the summands.
  LossVerdict additive_closure;
};

// Outcomes with chances 0.89, 0.01, 0.1; x = 1, y = 1.9; the functional
// 0.4 min + 0.2 median + 0.4 max.
AllaisReport allais_demo();

}  // namespace desir

#endif  // DESIR_DECIDE_HPP_
