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

// Marginal and conditional sets, assembly of per-block sets into D|𝓑,
// conglomerability and marginal extension.

#ifndef DESIR_STRUCTURE_HPP_
#define DESIR_STRUCTURE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "desir/desir_set.hpp"

namespace desir {

// In iff f is constant on every block and a member of d.
Membership marginal_member(const DesirSet& d, const Gamble& f, const Partition& p);
// In iff f vanishes outside b and is a member of d. Throws
// std::invalid_argument for an empty b.
Membership conditional_member(const DesirSet& d, const Gamble& f, const Event& b);

DesirSet marginal_set(const DesirSet& d, const Partition& p);
DesirSet conditional_set(const DesirSet& d, const Event& b);

struct ConditionalFamily {
  Partition partition;
  // One set per block, holding gambles that vanish outside it.
  std::vector<DesirSet> per_block;

  // Lazy membership closures over d.
  static ConditionalFamily from_set(const DesirSet& d, const Partition& p);
  // Checks sizes and that every generator of a generated block set vanishes
  // outside its block; throws std::invalid_argument otherwise.
  static ConditionalFamily from_blocks(Partition p, std::vector<DesirSet> sets);
};

// In iff f ≠ 0 and every nonzero cutoff(f, B) is in the block's set.
// Unknown when some block answers Unknown and none answers Out.
Membership assembled_member(const ConditionalFamily& fam, const Gamble& f);
DesirSet assembled_set(const ConditionalFamily& fam);

struct ConglomerabilityResult {
  // A member of D|𝓑 outside d: proof of non-conglomerability. Absent means
  // no witness among the candidates tried, which is evidence only.
  std::optional<Gamble> witness;
  std::string source;  // "generators", "grid" or "random"
  int tested = 0;
  int unknowns = 0;
};

// Candidates, in order: combinations of per-block generators with sign
// flips, then the grid {-1, 0, 1} on every block (n <= 6), then `trials`
// random per-block members.
ConglomerabilityResult conglomerability_check(const DesirSet& d,
                                              const ConditionalFamily& fam, int trials,
                                              std::uint64_t seed);

// The set generated under `spec` by the marginal's generators together with
// every block's generators. All sets must be generated; spec must be one of
// Kappa1..Kappa4. Throws std::invalid_argument otherwise.
DesirSet marginal_extension_set(const DesirSet& marg, const ConditionalFamily& fam,
                                const ClosureSpec& spec);

}  // namespace desir

#endif  // DESIR_STRUCTURE_HPP_
