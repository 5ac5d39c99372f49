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

#include "desir/probes.hpp"

#include <stdexcept>

namespace desir {

namespace {

std::size_t probe_dim(const ClosureSpec& spec, int trial) {
  if (spec.kind == OperatorKind::PrevisionInduced) return spec.functional->dim();
  return trial % 2 == 0 ? 2 : 3;
}

void record(AxiomReport& rep, const char* axiom, const std::vector<Gamble>& gens,
            const Gamble& f, std::string detail) {
  rep.violations.push_back({axiom, gens, f, std::move(detail)});
}

}  // namespace

AxiomReport axiom_probe(const ClosureSpec& spec, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("axiom_probe needs trials >= 1");
  spec.validate();
  AxiomReport rep;
  rep.spec = spec.name();
  rep.trials = trials;
  Sampler s(seed);
  constexpr int kQueries = 6;

  for (int t = 0; t < trials; ++t) {
    const std::size_t n = probe_dim(spec, t);
    const std::size_t k = 1 + s.index(3);
    std::vector<Gamble> gens = s.gambles(k, n);
    DesirSet d = DesirSet::generated(n, gens, spec);

    auto check_in = [&](const char* axiom, const DesirSet& set, const Gamble& f,
                        const char* what) {
      ++rep.checks;
      Membership m = set.member(f);
      if (m.unknown()) {
        ++rep.unknowns;
      } else if (m.out()) {
        record(rep, axiom, set.is_generated() ? set.generators() : gens, f, what);
      }
    };

    // C1.
    for (const Gamble& g : gens) check_in("C1", d, g, "generator not a member");
    check_in("C1", d, s.positive(n), "positive gamble not a member");

    std::vector<Gamble> queries = s.gambles(kQueries, n);
    std::vector<Membership> answers;
    for (const Gamble& f : queries) answers.push_back(d.member(f));

    // C2: a sub-list can only produce fewer members.
    if (k > 1) {
      std::vector<Gamble> sub = gens;
      sub.erase(sub.begin() + static_cast<long>(s.index(k)));
      DesirSet ds = DesirSet::generated(n, sub, spec);
      for (std::size_t q = 0; q < queries.size(); ++q) {
        ++rep.checks;
        Membership m = ds.member(queries[q]);
        if (m.unknown() || answers[q].unknown()) {
          ++rep.unknowns;
          continue;
        }
        if (m.in() && answers[q].out()) {
          record(rep, "C2", gens, queries[q], "member of sub-list extension only");
        }
      }
    }

    // C3: adding a known member leaves every answer unchanged.
    Gamble known = gens.front();
    for (std::size_t q = 0; q < queries.size(); ++q) {
      if (answers[q].in()) {
        known = queries[q];
        break;
      }
    }
    if (d.member(known).in()) {
      DesirSet dp = d.with_generators({known});
      for (std::size_t q = 0; q < queries.size(); ++q) {
        ++rep.checks;
        Membership m = dp.member(queries[q]);
        if (m.unknown() || answers[q].unknown()) {
          ++rep.unknowns;
          continue;
        }
        if (m.verdict != answers[q].verdict) {
          record(rep, "C3", gens, queries[q],
                 "answer changed after adding member " + known.to_string());
        }
      }
    }

    // C4.
    for (std::size_t q = 0; q < queries.size(); ++q) {
      if (!answers[q].in()) continue;
      check_in("C4", d, queries[q] + s.nonnegative(n), "dominating gamble not a member");
    }
  }
  return rep;
}

namespace {

double random_weight(Sampler& s) {
  static constexpr double kWeights[] = {0.5, 1.5, 2.0, 3.0};
  std::size_t i = s.index(5);
  return i < 4 ? kWeights[i] : s.uniform(0.1, 3.0);
}

std::optional<Gamble> apply_rule(const ClosureSpec& spec, const Gamble& f,
                                 const Gamble& g, Sampler& s) {
  switch (spec.kind) {
    case OperatorKind::Kappa1: return f * random_weight(s) + g * random_weight(s);
    case OperatorKind::Kappa2: return f + g;
    case OperatorKind::Kappa3: return f * random_weight(s);
    case OperatorKind::Kappa4: return f + s.nonnegative(f.size());
    case OperatorKind::UtilityWarp: {
      const UtilityFn& u = *spec.utility;
      double a = random_weight(s);
      double b = random_weight(s);
      try {
        std::vector<double> v(f.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
          v[i] = u.inverse(a * u(f[i]) + b * u(g[i]));
        }
        return Gamble(std::move(v));
      } catch (const std::domain_error&) {
        return std::nullopt;
      }
    }
    default:
      throw std::invalid_argument(std::string("no closure rule for ") +
                                  to_string(spec.kind));
  }
}

const char* rule_name(OperatorKind k) {
  switch (k) {
    case OperatorKind::Kappa1: return "positive combination";
    case OperatorKind::Kappa2: return "sum";
    case OperatorKind::Kappa3: return "positive scaling";
    case OperatorKind::Kappa4: return "dominance";
    case OperatorKind::UtilityWarp: return "warped combination";
    default: return "?";
  }
}

bool supports_rule(OperatorKind k) {
  return k == OperatorKind::Kappa1 || k == OperatorKind::Kappa2 ||
         k == OperatorKind::Kappa3 || k == OperatorKind::Kappa4 ||
         k == OperatorKind::UtilityWarp;
}

}  // namespace

std::optional<ClosureWitness> find_closure_violation(
    const DesirSet& d, const ClosureSpec& spec, int trials, Sampler& s,
    const std::vector<Gamble>& extra_members) {
  if (!supports_rule(spec.kind)) {
    throw std::invalid_argument(std::string("no closure rule for ") +
                                to_string(spec.kind));
  }
  const std::size_t n = d.dim();
  std::vector<Gamble> pool;
  auto add = [&](const Gamble& f) {
    if (d.member(f).in()) pool.push_back(f);
  };
  for (const Gamble& f : extra_members) add(f);
  for (int i = 0; i < 200 && pool.size() < 16; ++i) add(s.gamble(n));
  // Members whose negation is also a member are the natural candidates for
  // cancellation; keep both.
  const std::size_t base = pool.size();
  for (std::size_t i = 0; i < base; ++i) add(-pool[i]);
  if (pool.empty()) return std::nullopt;

  auto test = [&](const Gamble& f, const Gamble& g) -> std::optional<ClosureWitness> {
    std::optional<Gamble> r = apply_rule(spec, f, g, s);
    if (!r) return std::nullopt;
    if (d.member(*r).out()) {
      std::vector<Gamble> used{f};
      if (spec.kind == OperatorKind::Kappa1 || spec.kind == OperatorKind::Kappa2 ||
          spec.kind == OperatorKind::UtilityWarp) {
        used.push_back(g);
      }
      return ClosureWitness{used, *r, rule_name(spec.kind)};
    }
    return std::nullopt;
  };

  // Opposite pairs first, then random pairs.
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = base; j < pool.size(); ++j) {
      if (pool[i] == -pool[j]) {
        if (auto w = test(pool[i], pool[j])) return w;
      }
    }
  }
  for (int t = 0; t < trials; ++t) {
    const Gamble& f = pool[s.index(pool.size())];
    const Gamble& g = pool[s.index(pool.size())];
    if (auto w = test(f, g)) return w;
  }
  return std::nullopt;
}

EquivalenceResult equivalence_probe(const ClosureSpec& a, const ClosureSpec& b,
                                    int trials, std::uint64_t seed) {
  a.validate();
  b.validate();
  if (!supports_rule(a.kind) || !supports_rule(b.kind)) {
    throw std::invalid_argument(
        "equivalence_probe supports kappa1-kappa4 and utility-warp");
  }
  EquivalenceResult res;
  Sampler s(seed);
  const ClosureSpec* specs[2] = {&a, &b};

  const bool same = a.name() == b.name();
  auto probe = [&](const DesirSet& d, const std::vector<Gamble>& hints) -> bool {
    ++res.sets_probed;
    if (same) return false;
    // Generated sets are closed under their own spec by construction; other
    // sets are checked under both rules.
    std::optional<ClosureWitness> viol[2];
    bool closed[2];
    for (int x = 0; x < 2; ++x) {
      if (d.is_generated() && d.spec()->name() == specs[x]->name()) {
        closed[x] = true;
        continue;
      }
      viol[x] = find_closure_violation(d, *specs[x], trials, s, hints);
      closed[x] = !viol[x].has_value();
    }
    for (int x = 0; x < 2; ++x) {
      if (closed[x] && viol[1 - x]) {
        res.distinguished = true;
        res.witness = EquivalenceWitness{d.describe(), specs[x]->name(),
                                         specs[1 - x]->name(), *viol[1 - x]};
        return true;
      }
    }
    return false;
  };

  for (CatalogId id : {CatalogId::KappaDiffD1, CatalogId::KappaDiffD2}) {
    std::vector<Gamble> hints{{-1, 1}, {1, -1}, {-2, 2}, {2, -2}, {-0.5, 0.5}};
    if (probe(DesirSet::catalog(id), hints)) return res;
  }
  for (int t = 0; t < trials; ++t) {
    const std::size_t n = t % 2 == 0 ? 2 : 3;
    for (const ClosureSpec* spec : specs) {
      std::vector<Gamble> gens = s.gambles(1 + s.index(2), n);
      DesirSet d = DesirSet::generated(n, gens, *spec);
      if (!d.member(Gamble::zero(n)).out()) continue;
      if (probe(d, gens)) return res;
    }
  }
  return res;
}

HierarchyReport hierarchy_probe(int sets, int queries_per_set, std::uint64_t seed) {
  Sampler s(seed);
  HierarchyReport r;
  r.sets = sets;
  for (int t = 0; t < sets; ++t) {
    std::size_t n = 2 + t % 2;
    std::vector<Gamble> gens = s.gambles(1 + s.index(3), n);
    for (int q = 0; q < queries_per_set; ++q) {
      Gamble f = s.gamble(n);
      ++r.queries;
      bool k1 = member_kappa1(gens, f).in();
      bool k3 = member_kappa3(gens, f).in();
      bool k4 = member_kappa4(gens, f).in();
      Membership k2 = member_kappa2(gens, f, 64);
      if (k4 && !k3) r.violations.emplace_back("kappa4 in kappa3", f);
      if (k3 && !k1) r.violations.emplace_back("kappa3 in kappa1", f);
      if (k2.unknown()) {
        ++r.unknowns;
        continue;
      }
      if (k4 && k2.out()) r.violations.emplace_back("kappa4 in kappa2", f);
      if (k2.in() && !k1) r.violations.emplace_back("kappa2 in kappa1", f);
    }
  }
  return r;
}

}  // namespace desir
