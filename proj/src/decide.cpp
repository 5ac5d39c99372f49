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

#include "desir/decide.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "desir/credal.hpp"
#include "desir/lp.hpp"

namespace desir {

bool DecisionReport::is_optimal(std::size_t i) const {
  return std::find(optimal.begin(), optimal.end(), i) != optimal.end();
}

namespace {

void check_options(std::size_t dim, const std::vector<Gamble>& options) {
  if (options.empty()) throw std::invalid_argument("no options to choose from");
  for (const Gamble& f : options) require_same_size(f, dim, "option");
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

enum class Outcome { Kept, Rejected, Undecided };

struct Verdicts {
  Outcome outcome = Outcome::Kept;
  std::optional<double> price;
  bool by_boundary = false;
  std::string detail;
};

// One pairwise test: does g knock f out? Tries a single witness price and
// checks the two memberships the criterion asks for.
using PairTest = std::function<Verdicts(std::size_t f, std::size_t g)>;

DecisionReport run_pairwise(std::string name, std::size_t n, const PairTest& test) {
  DecisionReport r;
  r.criterion = std::move(name);
  for (std::size_t i = 0; i < n; ++i) {
    bool out = false;
    for (std::size_t j = 0; j < n && !out; ++j) {
      if (i == j) continue;
      Verdicts v = test(i, j);
      if (v.outcome == Outcome::Rejected) {
        r.rejected.push_back({i, j, v.price, v.detail});
        r.ties_resolved_by_boundary |= v.by_boundary;
        out = true;
      } else if (v.outcome == Outcome::Undecided) {
        r.notes.push_back("option " + std::to_string(i) + " vs " + std::to_string(j) + ": " +
                          v.detail);
      }
    }
    if (!out) r.optimal.push_back(i);
  }
  return r;
}

// μ strictly between the two bounds when they are apart by more than the
// tie tolerance; the boundary point when they tie.
struct PriceChoice {
  std::optional<double> mu;
  bool tie = false;
};

PriceChoice choose_price(double low, double high, const PrevisionBracket& boundary,
                         double tie_tol) {
  if (!std::isfinite(low) || !std::isfinite(high)) {
    if (high > low) {
      double mu = std::isfinite(low) ? low + 1.0 : (std::isfinite(high) ? high - 1.0 : 0.0);
      return {mu, false};
    }
    return {};
  }
  if (high - low > tie_tol) return {0.5 * (low + high), false};
  if (std::abs(high - low) <= tie_tol) return {boundary.boundary_point, true};
  return {};
}

// Checks the membership pattern at μ: each entry is (gamble, wanted In).
Verdicts verify(const DesirSet& d, double mu, bool tie,
                const std::vector<std::pair<Gamble, bool>>& wanted, const std::string& what) {
  Verdicts v;
  v.price = mu;
  for (const auto& [h, in] : wanted) {
    Membership m = d.member(h);
    if (m.unknown()) {
      v.outcome = Outcome::Undecided;
      v.detail = "membership undecided at price " + fmt(mu);
      return v;
    }
    if (m.in() != in) return Verdicts{};
  }
  v.outcome = Outcome::Rejected;
  v.by_boundary = tie;
  v.detail = what + " at price " + fmt(mu) + (tie ? " (boundary)" : "");
  return v;
}

Verdicts uncertified(const PrevisionBracket& a, const PrevisionBracket& b) {
  Verdicts v;
  if (!a.certified || !b.certified) {
    v.outcome = Outcome::Undecided;
    v.detail = "prevision bracket not certified";
  }
  return v;
}

// No witness price: apart the wrong way, or a tie with no boundary point.
Verdicts no_price(const PriceChoice& c, const PrevisionBracket& a, const PrevisionBracket& b) {
  Verdicts v = uncertified(a, b);
  if (!c.tie) return v;
  if (v.outcome == Outcome::Kept) {
    v.outcome = Outcome::Undecided;
    v.detail = "tie without a boundary point";
  }
  return v;
}

Verdicts maximin_pair(const DesirSet& d, const std::vector<Gamble>& options,
                      const std::vector<PrevisionBracket>& lo, std::size_t i, std::size_t j,
                      const DecideOptions& opt) {
  PriceChoice c = choose_price(lo[i].value(), lo[j].value(), lo[j], opt.tie_tol);
  if (!c.mu) return no_price(c, lo[i], lo[j]);
  Verdicts v = verify(d, *c.mu, c.tie, {{options[j] - *c.mu, true}, {options[i] - *c.mu, false}},
                      "buying price accepted for option " + std::to_string(j) + " only");
  if (v.outcome == Outcome::Kept && (!lo[i].certified || !lo[j].certified)) {
    return uncertified(lo[i], lo[j]);
  }
  return v;
}

std::vector<PrevisionBracket> lower_brackets(const DesirSet& d, const std::vector<Gamble>& options,
                                             const DecideOptions& opt) {
  std::vector<PrevisionBracket> lo;
  for (const Gamble& f : options) lo.push_back(lower_prevision(d, f, opt.prevision));
  return lo;
}

}  // namespace

DecisionReport gamma_maximin(const DesirSet& d, const std::vector<Gamble>& options,
                             const DecideOptions& opt) {
  check_options(d.dim(), options);
  std::vector<PrevisionBracket> lo = lower_brackets(d, options, opt);
  return run_pairwise("gamma-maximin", options.size(), [&](std::size_t i, std::size_t j) {
    return maximin_pair(d, options, lo, i, j, opt);
  });
}

DecisionReport gamma_maximax(const DesirSet& d, const std::vector<Gamble>& options,
                             const DecideOptions& opt) {
  check_options(d.dim(), options);
  std::vector<PrevisionBracket> up;
  for (const Gamble& f : options) up.push_back(upper_prevision(d, f, opt.prevision));
  return run_pairwise("gamma-maximax", options.size(), [&](std::size_t i, std::size_t j) {
    PriceChoice c = choose_price(up[i].value(), up[j].value(), up[i], opt.tie_tol);
    if (!c.mu) return no_price(c, up[i], up[j]);
    Verdicts v = verify(d, *c.mu, c.tie, {{*c.mu - options[i], true}, {*c.mu - options[j], false}},
                        "selling price accepted for option " + std::to_string(i) + " only");
    if (v.outcome == Outcome::Kept && (!up[i].certified || !up[j].certified)) return uncertified(up[i], up[j]);
    return v;
  });
}

DecisionReport interval_dominance(const DesirSet& d, const std::vector<Gamble>& options,
                                  const DecideOptions& opt) {
  check_options(d.dim(), options);
  std::vector<PrevisionBracket> lo, up;
  for (const Gamble& f : options) {
    lo.push_back(lower_prevision(d, f, opt.prevision));
    up.push_back(upper_prevision(d, f, opt.prevision));
  }
  return run_pairwise("interval-dominance", options.size(), [&](std::size_t i, std::size_t j) {
    PriceChoice c = choose_price(up[i].value(), lo[j].value(), up[i], opt.tie_tol);
    if (!c.mu) return no_price(c, up[i], lo[j]);
    Verdicts v = verify(d, *c.mu, c.tie, {{*c.mu - options[i], true}, {options[j] - *c.mu, true}},
                        "selling price of option " + std::to_string(i) + " buys option " +
                            std::to_string(j));
    if (v.outcome == Outcome::Kept && (!up[i].certified || !lo[j].certified)) return uncertified(up[i], lo[j]);
    return v;
  });
}

DecisionReport maximality_kappa1(const std::vector<Gamble>& gens,
                                 const std::vector<Gamble>& options, double tol) {
  if (options.empty()) throw std::invalid_argument("no options to choose from");
  check_options(options.front().size(), options);
  for (const Gamble& g : gens) require_same_size(g, options.front().size(), "generator");
  return run_pairwise("maximality", options.size(), [&](std::size_t i, std::size_t j) {
    double v = kappa1_lower_lp(gens, options[j] - options[i]);
    Verdicts out;
    if (v > tol) {
      out.outcome = Outcome::Rejected;
      out.price = v;
      out.detail = "lower prevision of the difference is " + fmt(v);
    }
    return out;
  });
}

DecisionReport e_admissible_kappa1(const std::vector<Gamble>& gens,
                                   const std::vector<Gamble>& options) {
  if (options.empty()) throw std::invalid_argument("no options to choose from");
  const std::size_t n = options.front().size();
  check_options(n, options);
  DecisionReport r;
  r.criterion = "e-admissibility";
  CredalPolytope base{n, gens};
  if (is_empty(base).empty) {
    r.available = false;
    r.notes.push_back("the credal set is empty");
    return r;
  }
  for (std::size_t i = 0; i < options.size(); ++i) {
    CredalPolytope c = base;
    for (std::size_t j = 0; j < options.size(); ++j) {
      if (j != i) c.constraints.push_back(options[i] - options[j]);
    }
    EmptinessResult e = is_empty(c);
    if (!e.empty) {
      r.optimal.push_back(i);
      continue;
    }
    Rejection rej;
    rej.option = i;
    rej.detail = "no prevision in the credal set ranks this option first";
    r.rejected.push_back(rej);
  }
  return r;
}

namespace {

DecisionReport unavailable(std::string name) {
  DecisionReport r;
  r.criterion = std::move(name);
  r.available = false;
  r.notes.push_back("needs a family of decisive supersets");
  return r;
}

}  // namespace

DecisionReport generic_maximality(const DesirSet& d, const std::vector<Gamble>& options,
                                  const std::optional<std::vector<DesirSet>>& supersets,
                                  const DecideOptions& opt) {
  check_options(d.dim(), options);
  if (!supersets || supersets->empty()) return unavailable("maximality");
  std::vector<std::vector<PrevisionBracket>> lo;
  for (const DesirSet& s : *supersets) lo.push_back(lower_brackets(s, options, opt));
  // g knocks f out iff it does so in every superset.
  return run_pairwise("maximality", options.size(), [&](std::size_t i, std::size_t j) {
    Verdicts all;
    all.outcome = Outcome::Rejected;
    all.detail = "preferred in every superset";
    for (std::size_t k = 0; k < supersets->size(); ++k) {
      Verdicts v = maximin_pair((*supersets)[k], options, lo[k], i, j, opt);
      if (v.outcome != Outcome::Rejected) return v;
    }
    return all;
  });
}

DecisionReport generic_e_admissibility(const DesirSet& d, const std::vector<Gamble>& options,
                                       const std::optional<std::vector<DesirSet>>& supersets,
                                       const DecideOptions& opt) {
  check_options(d.dim(), options);
  if (!supersets || supersets->empty()) return unavailable("e-admissibility");
  DecisionReport r;
  r.criterion = "e-admissibility";
  std::vector<DecisionReport> per;
  for (const DesirSet& s : *supersets) per.push_back(gamma_maximin(s, options, opt));
  for (std::size_t i = 0; i < options.size(); ++i) {
    bool somewhere = false;
    for (const DecisionReport& rep : per) somewhere |= rep.is_optimal(i);
    if (somewhere) {
      r.optimal.push_back(i);
    } else {
      Rejection rej;
      rej.option = i;
      rej.detail = "beaten in every superset";
      r.rejected.push_back(rej);
    }
  }
  return r;
}

AllaisReport allais_demo() {
  AllaisReport r;
  PriceFunctional owa = PriceFunctional::owa({0.4, 0.2, 0.4});
  DesirSet d = DesirSet::generated(3, {}, ClosureSpec::prevision_induced(owa));
  r.set = d.describe();
  r.options = {{1, 1, 1}, {1, 0, 1.9}, {0, 1, 1}, {0, 0, 1.9}};
  DecideOptions opt;
  opt.prevision.tol = 1e-13;
  for (const Gamble& f : r.options) {
    r.previsions.push_back(lower_prevision(d, f, opt.prevision).value());
    r.upper.push_back(upper_prevision(d, f, opt.prevision).value());
  }
  r.experiment1 = gamma_maximin(d, {r.options[0], r.options[1]}, opt);
  r.experiment2 = gamma_maximin(d, {r.options[2], r.options[3]}, opt);
  r.prefers_f1 = r.experiment1.optimal == std::vector<std::size_t>{0};
  r.prefers_f4 = r.experiment2.optimal == std::vector<std::size_t>{1};

  const Gamble& f2 = r.options[1];
  const Gamble& f3 = r.options[2];
  const Gamble& f4 = r.options[3];
  r.price_conditions = d.member(f2 - r.mu1).out() && d.member(f3 - r.mu2).out() &&
                       d.member(f4 - r.mu2).in();
  r.summands = {(r.eps - f2) + r.mu1, (r.eps - f3) + r.mu2, f4 - r.mu2};
  r.summands_desirable = true;
  for (const Gamble& h : r.summands) r.summands_desirable &= d.member(h).in();
  r.sum = r.summands[0] + r.summands[1] + r.summands[2];
  r.sum_class = classify(r.sum);
  r.additive_closure = avoids_sure_loss(DesirSet::generated(3, r.summands, ClosureSpec::kappa1()));
  return r;
}

}  // namespace desir
