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

#include "desir/structure.hpp"

#include <stdexcept>

#include "desir/sampling.hpp"

namespace desir {

Membership marginal_member(const DesirSet& d, const Gamble& f, const Partition& p) {
  require_same_size(f, d.dim(), "marginal gamble");
  if (!is_measurable(f, p)) return Membership::no("not-measurable");
  return d.member(f);
}

Membership conditional_member(const DesirSet& d, const Gamble& f, const Event& b) {
  require_same_size(f, d.dim(), "conditional gamble");
  if (b.empty()) throw std::invalid_argument("conditional_member: empty event");
  if (!(cutoff(f, b) == f)) return Membership::no("nonzero-outside-block");
  return d.member(f);
}

DesirSet marginal_set(const DesirSet& d, const Partition& p) {
  return DesirSet::closure(
      d.dim(), "marginal of " + d.describe(),
      [d, p](const Gamble& f) { return marginal_member(d, f, p); }, d.spec());
}

DesirSet conditional_set(const DesirSet& d, const Event& b) {
  if (b.empty()) throw std::invalid_argument("conditional_set: empty event");
  return DesirSet::closure(
      d.dim(), "conditional of " + d.describe(),
      [d, b](const Gamble& f) { return conditional_member(d, f, b); }, d.spec());
}

ConditionalFamily ConditionalFamily::from_set(const DesirSet& d, const Partition& p) {
  if (p.space_size() != d.dim()) {
    throw std::invalid_argument("partition size does not match the set");
  }
  std::vector<DesirSet> sets;
  for (const Event& b : p.blocks()) sets.push_back(conditional_set(d, b));
  return ConditionalFamily{p, std::move(sets)};
}

ConditionalFamily ConditionalFamily::from_blocks(Partition p, std::vector<DesirSet> sets) {
  if (sets.size() != p.blocks().size()) {
    throw std::invalid_argument("one set per block is required");
  }
  for (std::size_t k = 0; k < sets.size(); ++k) {
    if (sets[k].dim() != p.space_size()) {
      throw std::invalid_argument("block set size does not match the partition");
    }
    if (!sets[k].is_generated()) continue;
    for (const Gamble& g : sets[k].generators()) {
      if (!(cutoff(g, p.blocks()[k]) == g)) {
        throw std::invalid_argument("generator " + g.to_string() +
                                    " does not vanish outside its block");
      }
    }
  }
  return ConditionalFamily{std::move(p), std::move(sets)};
}

Membership assembled_member(const ConditionalFamily& fam, const Gamble& f) {
  require_same_size(f, fam.partition.space_size(), "assembled gamble");
  if (f.is_zero()) return Membership::no("zero");
  bool unknown = false;
  for (std::size_t k = 0; k < fam.per_block.size(); ++k) {
    Gamble part = cutoff(f, fam.partition.blocks()[k]);
    if (part.is_zero()) continue;
    Membership m = fam.per_block[k].member(part);
    if (m.out()) return Membership::no("block " + std::to_string(k) + " rejects");
    unknown |= m.unknown();
  }
  if (unknown) return Membership::maybe("block undecided");
  return Membership::yes("every block accepts");
}

DesirSet assembled_set(const ConditionalFamily& fam) {
  return DesirSet::closure(fam.partition.space_size(), "assembled family",
                           [fam](const Gamble& f) { return assembled_member(fam, f); });
}

namespace {

// Grid {-1, 0, 1} on the block, zero elsewhere; first coordinate slowest.
std::vector<Gamble> block_grid(const Event& b) {
  std::vector<std::size_t> idx = b.indices();
  std::vector<Gamble> out;
  if (idx.size() > 6) return out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < idx.size(); ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<double> v(b.size(), 0.0);
    std::size_t c = code;
    for (std::size_t i = idx.size(); i-- > 0;) {
      v[idx[i]] = static_cast<double>(c % 3) - 1.0;
      c /= 3;
    }
    out.emplace_back(std::move(v));
  }
  return out;
}

class WitnessSearch {
 public:
  WitnessSearch(const DesirSet& d, const ConditionalFamily& fam, ConglomerabilityResult& r)
      : d_(d), fam_(fam), r_(r) {}

  // Keeps the block members among `cands` (zero always kept, first).
  std::vector<Gamble> members(std::size_t k, const std::vector<Gamble>& cands) {
    std::vector<Gamble> out{Gamble::zero(d_.dim())};
    for (const Gamble& g : cands) {
      if (g.is_zero()) continue;
      bool dup = false;
      for (const Gamble& h : out) dup |= h == g;
      if (dup) continue;
      Membership m = fam_.per_block[k].member(g);
      if (m.in()) out.push_back(g);
      if (m.unknown()) ++r_.unknowns;
    }
    return out;
  }

  // Tries every sum with one candidate per block, block 0 slowest.
  bool product(const std::vector<std::vector<Gamble>>& per_block, const char* source,
               long budget) {
    std::size_t nb = per_block.size();
    std::vector<std::size_t> pos(nb, 0);
    for (long step = 0; step < budget; ++step) {
      Gamble f = Gamble::zero(d_.dim());
      for (std::size_t k = 0; k < nb; ++k) f = f + per_block[k][pos[k]];
      if (!f.is_zero() && test(f, source)) return true;
      std::size_t k = nb;
      while (k > 0) {
        --k;
        if (++pos[k] < per_block[k].size()) break;
        pos[k] = 0;
        if (k == 0) return false;
      }
      if (nb == 0) return false;
    }
    return false;
  }

  bool test(const Gamble& f, const char* source) {
    ++r_.tested;
    Membership m = d_.member(f);
    if (m.unknown()) ++r_.unknowns;
    if (!m.out()) return false;
    r_.witness = f;
    r_.source = source;
    return true;
  }

 private:
  const DesirSet& d_;
  const ConditionalFamily& fam_;
  ConglomerabilityResult& r_;
};

}  // namespace

ConglomerabilityResult conglomerability_check(const DesirSet& d,
                                              const ConditionalFamily& fam, int trials,
                                              std::uint64_t seed) {
  if (fam.partition.space_size() != d.dim()) {
    throw std::invalid_argument("partition size does not match the set");
  }
  ConglomerabilityResult r;
  const auto& blocks = fam.partition.blocks();
  if (blocks.size() < 2) return r;  // D|Ω is a subset of D
  WitnessSearch search(d, fam, r);
  constexpr long kBudget = 200000;

  std::vector<std::vector<Gamble>> gens(blocks.size());
  bool any = false;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    std::vector<Gamble> cands;
    if (fam.per_block[k].is_generated()) {
      for (const Gamble& g : fam.per_block[k].generators()) {
        cands.push_back(cutoff(g, blocks[k]));
        cands.push_back(-cutoff(g, blocks[k]));
      }
    }
    gens[k] = search.members(k, cands);
    any |= gens[k].size() > 1;
  }
  if (any && search.product(gens, "generators", kBudget)) return r;

  std::vector<std::vector<Gamble>> grid(blocks.size());
  for (std::size_t k = 0; k < blocks.size(); ++k) grid[k] = search.members(k, block_grid(blocks[k]));
  if (search.product(grid, "grid", kBudget)) return r;

  Sampler s(seed);
  for (int t = 0; t < trials; ++t) {
    Gamble f = Gamble::zero(d.dim());
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      Gamble part = cutoff(s.gamble(d.dim()), blocks[k]);
      Membership m = fam.per_block[k].member(part);
      if (m.in()) f = f + part;
    }
    if (!f.is_zero() && search.test(f, "random")) return r;
  }
  return r;
}

DesirSet marginal_extension_set(const DesirSet& marg, const ConditionalFamily& fam,
                                const ClosureSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case OperatorKind::Kappa1:
    case OperatorKind::Kappa2:
    case OperatorKind::Kappa3:
    case OperatorKind::Kappa4: break;
    default:
      throw std::invalid_argument("marginal extension needs Kappa1..Kappa4, got " +
                                  spec.name());
  }
  if (!marg.is_generated()) {
    throw std::invalid_argument("marginal extension needs a generated marginal set");
  }
  if (marg.dim() != fam.partition.space_size()) {
    throw std::invalid_argument("marginal set size does not match the partition");
  }
  std::vector<Gamble> gens;
  for (const Gamble& g : marg.generators()) {
    if (!is_measurable(g, fam.partition)) {
      throw std::invalid_argument("marginal generator " + g.to_string() +
                                  " is not measurable");
    }
    gens.push_back(g);
  }
  for (std::size_t k = 0; k < fam.per_block.size(); ++k) {
    const DesirSet& b = fam.per_block[k];
    if (!b.is_generated()) {
      throw std::invalid_argument("marginal extension needs generated block sets");
    }
    for (const Gamble& g : b.generators()) gens.push_back(cutoff(g, fam.partition.blocks()[k]));
  }
  return DesirSet::generated(marg.dim(), std::move(gens), spec);
}

}  // namespace desir
