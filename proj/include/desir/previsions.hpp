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

// Lower and upper previsions induced by a set of desirable gambles:
//
//   P̲(f) = sup { μ : f - μ ∈ D }      supremum buying price
//   P̄(f) = inf { μ : μ - f ∈ D }      infimum selling price
//
// Dominance closure makes the buying prices a lower set and the selling
// prices an upper set, so both are found by bisection on membership.
// Kappa1 sets are additionally solved as an LP, which is the reported value.

#ifndef DESIR_PREVISIONS_HPP_
#define DESIR_PREVISIONS_HPP_

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "desir/consistency.hpp"
#include "desir/desir_set.hpp"

namespace desir {

struct PrevisionOptions {
  double tol = 1e-9;
  int max_iter = 60;
  // Kappa1: also bisect and store the result in `cross_check`.
  bool cross_check = true;
};

struct PrevisionBracket {
  double lo = 0.0;
  double hi = 0.0;
  double width_tol = 1e-9;
  // Membership at the bound itself, evaluated at the nearest simple
  // fraction (denominator <= 1000) inside the bracket; Unknown when there
  // is none or the oracle cannot tell.
  Tri boundary_in = Tri::Unknown;
  // The price at which boundary_in was evaluated.
  std::optional<double> boundary_point;
  // False when an Unknown membership answer stopped the bisection early.
  bool certified = true;
  std::string method;
  std::optional<double> cross_check;

  double value() const;
  double width() const { return hi - lo; }
};

// sup of a lower set {μ : pred(μ) = In}, searched in [lo, hi]. The ends are
// pushed outwards (doubling the pad, 30 times at most) until pred(lo) is In
// and pred(hi) is Out; a saturated end yields ±inf.
PrevisionBracket sup_of_lower_set(const std::function<Verdict(double)>& pred, double lo,
                                  double hi, const PrevisionOptions& opt);
// inf of an upper set {μ : pred(μ) = In}.
PrevisionBracket inf_of_upper_set(const std::function<Verdict(double)>& pred, double lo,
                                  double hi, const PrevisionOptions& opt);

PrevisionBracket lower_prevision(const DesirSet& d, const Gamble& f,
                                 const PrevisionOptions& opt = {});
// Bisects the selling prices directly; `cross_check` holds -P̲(-f).
PrevisionBracket upper_prevision(const DesirSet& d, const Gamble& f,
                                 const PrevisionOptions& opt = {});

// max μ s.t. f - μ >= Σ λ_j g_j, λ >= 0; +inf when unbounded.
double kappa1_lower_lp(const std::vector<Gamble>& gens, const Gamble& f,
                       double lp_tol = 1e-9);

// A pair μ1 < μ2 with f - μ2 a member but f - μ1 not, i.e. a breach of the
// lower-set property the bisection relies on.
std::optional<std::pair<double, double>> find_monotonicity_violation(
    const DesirSet& d, const Gamble& f, int samples, std::uint64_t seed);

struct AdditivityCheck {
  double shift = 0.0;
  double shifted = 0.0;   // P̲(f + c)
  double expected = 0.0;  // P̲(f) + c
  bool ok = false;
};

struct AdditivityReport {
  std::vector<AdditivityCheck> checks;
  bool holds() const;
};

// |P̲(f + c) - P̲(f) - c| <= 2 tol for each shift c.
AdditivityReport check_constant_additivity(const DesirSet& d, const Gamble& f,
                                           const std::vector<double>& shifts,
                                           const PrevisionOptions& opt = {});

struct PAxiomFinding {
  std::vector<Gamble> gambles;
  double lambda = 1.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct PAxiomCheck {
  std::string axiom;  // "P1", "P2", "P3"
  // Asserted axioms fail on a finding; the others only record them.
  bool asserted = false;
  long checks = 0;
  long unknowns = 0;
  std::vector<PAxiomFinding> findings;

  bool passed() const { return !asserted || findings.empty(); }
};

struct PAxiomsReport {
  std::vector<PAxiomCheck> axioms;
  bool passed() const;
  const PAxiomCheck& get(const std::string& axiom) const;
};

// P1 P̲(f) >= inf f, always asserted.
// P2 P̲(f + g) >= P̲(f) + P̲(g), asserted for Kappa1 and Kappa2.
// P3 P̲(λf) = λ P̲(f), asserted for Kappa1 and Kappa3.
// `probes` are checked (all pairs, λ in {2, 0.5, 3}) before random samples.
PAxiomsReport check_p_axioms(const DesirSet& d, int samples, std::uint64_t seed,
                             const std::vector<Gamble>& probes = {},
                             const PrevisionOptions& opt = {});

struct LeqUprResult {
  enum class Kind { Holds, Violation, WitnessPair };
  Kind kind = Kind::Holds;
  int tested = 0;
  std::optional<Gamble> f;
  double lower = 0.0;
  double upper = 0.0;
  // Members of D with g1 + g2 = -eps.
  std::optional<Gamble> g1;
  std::optional<Gamble> g2;
  double eps = 0.0;
  std::string notes;
};

const char* to_string(LeqUprResult::Kind k);

// Samples f (probes first) comparing P̲(f) with P̄(f). On P̲ > P̄ it looks for
// two members summing to a negative constant: generator pairs first, then
// the two price transactions themselves. Holds is sampling evidence only.
LeqUprResult lpr_leq_upr_check(const DesirSet& d, int samples, std::uint64_t seed,
                               const std::vector<Gamble>& probes = {},
                               const PrevisionOptions& opt = {});

struct PrecisionResult {
  Tri value = Tri::Unknown;
  std::optional<Gamble> counterexample;
  double lower = 0.0;
  double upper = 0.0;
  int tested = 0;
  int unknowns = 0;
  std::string notes;
};

// Indicator gambles, then the grid {1, 0.5, 0, -0.5, -1}^n (n <= 4), then
// random gambles, `samples` in total. A gamble fails when P̄ and P̲ differ
// by more than 2 tol, or when f ∉ D but ε - f ∉ D for some ε in the grid.
PrecisionResult is_precise(const DesirSet& d, int samples, std::uint64_t seed,
                           const PrevisionOptions& opt = {});

struct WeakClosureReport {
  long checks = 0;
  long unknowns = 0;
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

// Every f with P̲(f) >= 0 is a limit of members: f - P̲(f) + ε ∈ D for
// ε in {1e-1, 1e-2, 1e-3, 1e-4}; every member has P̲ >= -tol.
WeakClosureReport closure_equals_weak_set(const DesirSet& d, int samples,
                                          std::uint64_t seed,
                                          const PrevisionOptions& opt = {});

// Lower previsions as functionals on a finite probe family.
using LowerPrevisionFn = std::function<double(const Gamble&)>;

LowerPrevisionFn lower_prevision_fn(const DesirSet& d, const PrevisionOptions& opt = {});
LowerPrevisionFn functional_fn(const PriceFunctional& F);

struct LprCheck {
  Tri value = Tri::Unknown;
  std::string criterion;
  // Gambles of the family taking part in the violation, with multipliers.
  std::vector<Gamble> witness;
  std::vector<double> multipliers;
  std::string notes;
};

// Closed forms on the family:
//   Kappa3, Kappa4  P̲(f) <= sup f
//   Kappa1, Kappa2  no nonnegative combination of f_i - P̲(f_i) is
//                   uniformly negative (LP; integer multiplicities recovered
//                   for Kappa2)
// Other kinds: sure loss of E_κ({f_i - P̲(f_i) + η}) with η = 1e-7.
LprCheck lpr_avoids_sure_loss(const LowerPrevisionFn& lower,
                              const std::vector<Gamble>& family, const ClosureSpec& spec);

// P̲(f) >= inf f on the family, and the price of no f_0 can be raised:
//   Kappa4  sup[(f' - P̲f') - (f - P̲f)] >= 0
//   Kappa3  sup[λ(f' - P̲f') - (f - P̲f)] >= 0, λ > 0 (LP per pair)
//   Kappa1  sup[Σ λ_i (f_i - P̲f_i) - (f_0 - P̲f_0)] >= 0 (LP per f_0)
//   Kappa2  Kappa1 passing implies it; otherwise multiplicities in {0,1,2}
//           are searched for families of at most 8, else Unknown
// Other kinds: f_0 - P̲f_0 - η ∉ E_κ({f_i - P̲f_i + η}).
LprCheck lpr_coherent(const LowerPrevisionFn& lower, const std::vector<Gamble>& family,
                      const ClosureSpec& spec);

// The finite-family generic forms above, for every kind. Used as an oracle
// for the closed forms.
LprCheck lpr_avoids_sure_loss_generic(const LowerPrevisionFn& lower,
                                      const std::vector<Gamble>& family,
                                      const ClosureSpec& spec);
LprCheck lpr_coherent_generic(const LowerPrevisionFn& lower,
                              const std::vector<Gamble>& family, const ClosureSpec& spec);

// Conditioning a lower prevision on B:
//   gbr         sup{μ : P̲(B(f-μ)) > 0}   (inf_B f when P̲(B) <= 0)
//   member_sup  sup{μ : B(f-μ) ∈ D}
//   weak_sup    sup{μ : P̲(B(f-μ)) >= 0}
// Signs of P̲ are read with a 1e-9 dead zone. Throws std::runtime_error when
// the sign of P̲(B) cannot be certified.
struct GbrResult {
  PrevisionBracket lower_b;
  bool gbr_branch = false;
  PrevisionBracket gbr;
  PrevisionBracket member_sup;
  PrevisionBracket weak_sup;
  // gbr <= member_sup <= weak_sup, up to the bracket widths.
  bool sandwich_holds = false;
};

GbrResult gbr_conditional(const DesirSet& d, const Gamble& f, const Event& b,
                          const PrevisionOptions& opt = {});

// sup{μ : B(f - μ) ∈ cond}.
PrevisionBracket conditional_lower_prevision(const DesirSet& cond, const Gamble& f,
                                             const Event& b,
                                             const PrevisionOptions& opt = {});

// Lower prevision of the marginal extension from the marginal set and one
// conditional set per block:
//   Kappa4  max{ P̲_𝓑(Σ_B B min_B f), min_B P̲(f|B) }
//   Kappa1  P̲_𝓑(Σ_B B P̲(f|B))
// Throws std::invalid_argument for other kinds.
PrevisionBracket marginal_extension_prevision(const DesirSet& marg,
                                              const std::vector<DesirSet>& conds,
                                              const Partition& partition,
                                              const ClosureSpec& spec, const Gamble& f,
                                              const PrevisionOptions& opt = {});

}  // namespace desir

#endif  // DESIR_PREVISIONS_HPP_
