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

// Randomised checks of the closure-operator axioms and of operator
// equivalence. These are sampling procedures: a reported violation or
// witness is concrete, a clean run is only evidence.
//
//   C1 extensive     generators and positive gambles are members
//   C2 monotone      membership survives enlarging the generator list
//   C3 idempotent    adding a known member changes no answer
//   C4 dominance     anything above a member is a member

#ifndef DESIR_PROBES_HPP_
#define DESIR_PROBES_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "desir/desir_set.hpp"
#include "desir/sampling.hpp"

namespace desir {

struct AxiomViolation {
  std::string axiom;  // "C1".."C4"
  std::vector<Gamble> generators;
  Gamble gamble;
  std::string detail;
};

struct AxiomReport {
  std::string spec;
  int trials = 0;
  long checks = 0;
  long unknowns = 0;
  std::vector<AxiomViolation> violations;

  bool passed() const { return violations.empty(); }
};

// Spaces of size 2 and 3, one to three random generators per trial. For
// PrevisionInduced the functional fixes the space size.
AxiomReport axiom_probe(const ClosureSpec& spec, int trials, std::uint64_t seed);

// One application of the operator's defining rule to sampled members of
// `d`, landing outside `d`.
struct ClosureWitness {
  std::vector<Gamble> members;
  Gamble result;
  std::string rule;
};

// Samples members of `d` and applies the rule of `spec` once:
//   Kappa1  λf + μg        Kappa2  f + g
//   Kappa3  λf             Kappa4  f + h, h >= 0
//   UtilityWarp  u⁻¹(λu(f) + μu(g))
// Throws std::invalid_argument for other kinds. `extra_members` are tried
// before random candidates.
std::optional<ClosureWitness> find_closure_violation(
    const DesirSet& d, const ClosureSpec& spec, int trials, Sampler& sampler,
    const std::vector<Gamble>& extra_members = {});

struct EquivalenceWitness {
  std::string probe_set;     // description of the distinguishing set
  std::string closed_under;  // operator it is coherent under
  std::string not_closed_under;
  ClosureWitness violation;
};

struct EquivalenceResult {
  bool distinguished = false;
  std::optional<EquivalenceWitness> witness;
  int sets_probed = 0;
};

// Looks for a set that is coherent under one spec but not closed under the
// other. Probe sets: the binary catalog sets kappa-diff-d1/d2, then random
// natural extensions under each spec that avoid partial loss.
EquivalenceResult equivalence_probe(const ClosureSpec& a, const ClosureSpec& b,
                                    int trials, std::uint64_t seed);

struct HierarchyReport {
  int sets = 0;
  long queries = 0;
  long unknowns = 0;
  // Gambles in the smaller extension but not the larger, tagged like
  // "kappa4 in kappa3".
  std::vector<std::pair<std::string, Gamble>> violations;
};

// Random generator sets (1 to 3 gambles) over binary and ternary spaces,
// alternating, each queried with `queries_per_set` gambles, checking
// E_κ4 ⊆ E_κ3 ⊆ E_κ1 and E_κ4 ⊆ E_κ2 ⊆ E_κ1. Unknown Kappa2 answers are
// counted and skipped.
HierarchyReport hierarchy_probe(int sets, int queries_per_set, std::uint64_t seed);

}  // namespace desir

#endif  // DESIR_PROBES_HPP_
