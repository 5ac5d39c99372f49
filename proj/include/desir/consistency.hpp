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

// Avoiding partial loss, avoiding sure loss, coherence, decisiveness.
//
// Every supported set is closed under dominance, which collapses the loss
// conditions to single membership queries:
//   - some g ≤ 0 is a member  iff  0 is a member (0 ≥ g);
//   - some g with sup g < 0 is a member  iff  -ε is a member for some ε > 0
//     (take ε = -sup g).

#ifndef DESIR_CONSISTENCY_HPP_
#define DESIR_CONSISTENCY_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "desir/desir_set.hpp"
#include "desir/sampling.hpp"

namespace desir {

struct LossVerdict {
  Tri value = Tri::Unknown;
  // A nonpositive (partial loss) or strictly negative (sure loss) member
  // of the extension; present whenever value == False.
  std::optional<Gamble> witness;
  std::string notes;
};

LossVerdict avoids_partial_loss(const DesirSet& d);

// Decreasing ε grid 1e-1 .. 1e-9.
const std::vector<double>& default_eps_grid();

// Exact for Kappa1, UtilityWarp (LP), Kappa3, Kappa4, NegLimit and
// PrevisionInduced (generator scan); membership of -ε on the grid otherwise.
LossVerdict avoids_sure_loss(const DesirSet& d,
                             const std::vector<double>& eps_grid = default_eps_grid());

struct ConsistencyReport {
  Tri avoids_partial_loss = Tri::Unknown;
  Tri avoids_sure_loss = Tri::Unknown;
  std::optional<Gamble> witness;
  std::string notes;
};

ConsistencyReport consistency_report(const DesirSet& d);

struct CoherenceReport {
  Tri value = Tri::Unknown;
  std::string method;
  std::vector<std::string> failures;
};

// Generated sets: coherent iff the generators avoid partial loss. Other
// sets: sampled K1 (positive gambles are members), K2 (no nonpositive
// member, 0 excluded) and K3 (no one-step rule of the set's operator leaves
// the set).
CoherenceReport is_coherent(const DesirSet& d, int trials = 500, std::uint64_t seed = 0);

struct RelativeReport {
  int trials = 0;
  int checked = 0;
  std::vector<Gamble> flags;
};

// Samples f from `q` and flags those in `extension` but not in `d`, i.e.
// evidence that d is not closed relative to the sampled family.
RelativeReport coherent_relative(const DesirSet& d, const DesirSet& extension,
                                 const std::function<Gamble(Sampler&)>& q, int trials,
                                 std::uint64_t seed);

struct DecisivenessResult {
  std::optional<Gamble> counterexample;
  // Both f and -f members (true) or neither (false).
  bool both = false;
  int tested = 0;
  int unknowns = 0;
};

// Counterexample: a nonzero f with both or neither of f, -f in d. With
// `structured`, the grid {1, 0.5, 0, -0.5, -1}^n is scanned first.
DecisivenessResult decisiveness_probe(const DesirSet& d, int trials, std::uint64_t seed,
                                      bool structured = true);

}  // namespace desir

#endif  // DESIR_CONSISTENCY_HPP_
