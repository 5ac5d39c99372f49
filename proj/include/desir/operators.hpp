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

// Closure operators and their membership oracles.
//
// Each oracle decides f ∈ κ(G ∪ L+) for a finite generator list G, where
// L+ is the set of gambles f ⪈ 0:
//
//   Kappa1            conic hull: f ≥ Σ λ_j g_j, λ ≥ 0, λ ≠ 0
//   Kappa2            finite sums: f ≥ Σ n_j g_j, n_j ∈ ℕ, Σ n_j ≥ 1
//   Kappa3            single scalings: f ≥ λ g, λ > 0
//   Kappa4            dominance: f ≥ g
//   UtilityWarp       u⁻¹(Kappa1(u(G))), u applied pointwise
//   PrevisionInduced  dominance closure of G ∪ {f : F(f) > 0}
//   NegLimit(k)       Kappa4 while every generator has at most k negative
//                     coordinates, everything otherwise
//
// Every kind also accepts f ⪈ 0 unconditionally.

#ifndef DESIR_OPERATORS_HPP_
#define DESIR_OPERATORS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "desir/gamble.hpp"

namespace desir {

struct Tolerances {
  double lp_tol = 1e-9;
  // Pointwise slack below which a κ1 witness is reported as an equality.
  double strict_margin = 1e-7;
};

class UtilityFn {
 public:
  enum class Kind { Linear, OddPower, Cara };

  static UtilityFn linear(double slope);
  // u(x) = sign(x) |x|^a.
  static UtilityFn odd_power(double exponent);
  // u(x) = (1 - e^{-a x}) / a.
  static UtilityFn cara(double a);

  Kind kind() const { return kind_; }
  double param() const { return param_; }
  std::string name() const;

  // Both throw std::domain_error when the result is not finite.
  double operator()(double x) const;
  double inverse(double y) const;
  Gamble apply(const Gamble& f) const;

 private:
  UtilityFn(Kind kind, double param) : kind_(kind), param_(param) {}
  Kind kind_;
  double param_;
};

class PriceFunctional {
 public:
  enum class Kind { Linear, Owa };

  // Expectation under the probability vector p.
  static PriceFunctional linear(std::vector<double> p);
  // Ordered weighted average: weights[0] multiplies the smallest value.
  static PriceFunctional owa(std::vector<double> weights);

  Kind kind() const { return kind_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t dim() const { return weights_.size(); }
  std::string name() const;

  double operator()(const Gamble& f) const;

 private:
  PriceFunctional(Kind kind, std::vector<double> w)
      : kind_(kind), weights_(std::move(w)) {}
  Kind kind_;
  std::vector<double> weights_;
};

enum class OperatorKind {
  Kappa1,
  Kappa2,
  Kappa3,
  Kappa4,
  UtilityWarp,
  PrevisionInduced,
  NegLimit,
};

const char* to_string(OperatorKind k);

struct ClosureSpec {
  OperatorKind kind = OperatorKind::Kappa1;
  int max_multiplicity = 64;
  int max_negative_coords = 1;
  std::optional<UtilityFn> utility;
  std::optional<PriceFunctional> functional;
  Tolerances tol;

  static ClosureSpec kappa1();
  static ClosureSpec kappa2(int max_multiplicity = 64);
  static ClosureSpec kappa3();
  static ClosureSpec kappa4();
  static ClosureSpec utility_warp(UtilityFn u);
  static ClosureSpec prevision_induced(PriceFunctional f);
  static ClosureSpec neg_limit(int max_negative_coords);

  // Throws std::invalid_argument on bad parameters.
  void validate() const;
  std::string name() const;
};

enum class Verdict { In, Out, Unknown };

const char* to_string(Verdict v);

// Answer of a check that may be undecidable within the search bounds.
enum class Tri { True, False, Unknown };

const char* to_string(Tri t);
inline Tri tri(bool b) { return b ? Tri::True : Tri::False; }

// Tri-state membership answer. `via` names the rule that decided it;
// `coefficients` holds λ (κ1, κ3, warp) or multiplicities (κ2);
// `generator` is the generator index used by κ3/κ4 style witnesses.
struct Membership {
  Verdict verdict = Verdict::Unknown;
  std::string via;
  std::vector<double> coefficients;
  std::optional<std::size_t> generator;

  bool in() const { return verdict == Verdict::In; }
  bool out() const { return verdict == Verdict::Out; }
  bool unknown() const { return verdict == Verdict::Unknown; }

  static Membership yes(std::string via) { return {Verdict::In, std::move(via), {}, {}}; }
  static Membership no(std::string via) { return {Verdict::Out, std::move(via), {}, {}}; }
  static Membership maybe(std::string via) {
    return {Verdict::Unknown, std::move(via), {}, {}};
  }
};

Membership from_bool(bool in, const char* via_in, const char* via_out);

// Kind-specific oracles over a generator list. All accept f ⪈ 0.
// member_kappa1 throws lp::NumericalError when the LP kernel fails.
Membership member_kappa1(std::span<const Gamble> gens, const Gamble& f,
                         const Tolerances& tol = {});
Membership member_kappa2(std::span<const Gamble> gens, const Gamble& f,
                         int max_multiplicity, const Tolerances& tol = {});
Membership member_kappa3(std::span<const Gamble> gens, const Gamble& f);
Membership member_kappa4(std::span<const Gamble> gens, const Gamble& f);
Membership member_utility_warp(std::span<const Gamble> gens, const Gamble& f,
                               const UtilityFn& u, const Tolerances& tol = {});
Membership member_prevision_induced(std::span<const Gamble> gens,
                                    const PriceFunctional& F, const Gamble& f);
Membership member_neg_limit(std::span<const Gamble> gens, const Gamble& f,
                            int max_negative_coords);

// Dispatches on spec.kind.
Membership member_generated(std::span<const Gamble> gens, const ClosureSpec& spec,
                            const Gamble& f);

}  // namespace desir

#endif  // DESIR_OPERATORS_HPP_
