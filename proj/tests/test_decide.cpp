#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "desir/credal.hpp"
#include "desir/decide.hpp"
#include "desir/sampling.hpp"

#include <algorithm>
#include <cmath>

using namespace desir;

namespace {

using Idx = std::vector<std::size_t>;

DesirSet owa_set() {
  return DesirSet::generated(
      3, {}, ClosureSpec::prevision_induced(PriceFunctional::owa({0.4, 0.2, 0.4})));
}

DesirSet linear_set(std::vector<double> p) {
  std::size_t n = p.size();
  return DesirSet::generated(n, {}, ClosureSpec::prevision_induced(PriceFunctional::linear(std::move(p))));
}

// p as Kappa1 generators: ±(e_i - p) span the gambles with zero expectation.
std::vector<Gamble> linear_gens(const std::vector<double>& p) {
  std::vector<Gamble> g;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::vector<double> v(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) v[k] = (k == i ? 1.0 : 0.0) - p[i];
    g.emplace_back(v);
    g.push_back(-Gamble(v));
  }
  return g;
}

bool subset(const Idx& a, const Idx& b) {
  for (std::size_t x : a) {
    if (std::find(b.begin(), b.end(), x) == b.end()) return false;
  }
  return true;
}

const std::vector<Gamble> kAllais{{1, 1, 1}, {1, 0, 1.9}, {0, 1, 1}, {0, 0, 1.9}};

}  // namespace

TEST_CASE("allais") {
  AllaisReport r = allais_demo();
  REQUIRE(r.previsions.size() == 4);
  const double expected[] = {1.0, 0.96, 0.6, 0.76};
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(r.previsions[i] - expected[i]) <= 1e-12);
    CHECK(std::abs(r.upper[i] - expected[i]) <= 1e-12);
  }
  CHECK(r.prefers_f1);
  CHECK(r.prefers_f4);
  CHECK(r.experiment1.criterion == "gamma-maximin");
  CHECK(r.price_conditions);
  CHECK(r.summands_desirable);
  for (int i = 0; i < 3; ++i) CHECK(r.sum[i] == doctest::Approx(-0.02).epsilon(1e-12));
  CHECK(r.sum_class == GambleClass::StrictlyNegative);
  CHECK(r.additive_closure.value == Tri::False);
  // Expected utility with the stated chances cannot produce both choices.
  LinearPrevision chances({0.89, 0.01, 0.1});
  bool first = chances(kAllais[0]) > chances(kAllais[1]);
  bool second = chances(kAllais[3]) > chances(kAllais[2]);
  CHECK(first != second);
}

TEST_CASE("gamma-maximin") {
  DesirSet d = owa_set();
  CHECK(gamma_maximin(d, {kAllais[0], kAllais[1]}).optimal == Idx{0});
  CHECK(gamma_maximin(d, {kAllais[2], kAllais[3]}).optimal == Idx{1});
  DecisionReport dup = gamma_maximin(d, {kAllais[1], kAllais[1]});
  CHECK(dup.optimal == Idx{0, 1});
  DecisionReport four = gamma_maximin(d, kAllais);
  CHECK(four.optimal == Idx{0});
  CHECK(four.rejected.size() == 3);
  for (const Rejection& x : four.rejected) {
    REQUIRE(x.price);
    CHECK(d.member(kAllais[*x.by] - *x.price).in());
    CHECK(d.member(kAllais[x.option] - *x.price).out());
  }
}

TEST_CASE("equal lower previsions split by boundary membership") {
  // Vacuous dominance closure: P̲ = min, and f - min f is a member exactly
  // when f is not constant.
  DesirSet d = DesirSet::generated(2, {}, ClosureSpec::kappa4());
  DecisionReport r = gamma_maximin(d, {{0, 0}, {0, 1}});
  CHECK(r.optimal == Idx{1});
  CHECK(r.ties_resolved_by_boundary);
  REQUIRE(r.rejected.size() == 1);
  CHECK(*r.rejected[0].price == 0.0);
  // Same previsions and same boundary: both kept.
  CHECK(gamma_maximin(d, {{0, 2}, {0, 1}}).optimal == Idx{0, 1});
}

TEST_CASE("gamma-maximax") {
  DesirSet d = owa_set();
  CHECK(gamma_maximax(d, {kAllais[0], kAllais[1]}).optimal == Idx{0});
  CHECK(gamma_maximax(d, {kAllais[2], kAllais[3]}).optimal == Idx{1});
  CHECK(gamma_maximax(d, {kAllais[2]}).optimal == Idx{0});

  // Both upper previsions are 1 and 1 - f is a member for both, so the
  // selling-price sets coincide.
  DesirSet k4 = DesirSet::generated(2, {{-1, 1}}, ClosureSpec::kappa4());
  CHECK(upper_prevision(k4, {1, 0}).value() == doctest::Approx(1.0));
  CHECK(upper_prevision(k4, {0, 1}).value() == doctest::Approx(1.0));
  DecisionReport r = gamma_maximax(k4, {{1, 0}, {0, 1}});
  CHECK(r.optimal == Idx{0, 1});
  CHECK(r.notes.empty());
  // Equal upper previsions; 1 - (0,1) is a member and 1 - (1,1) = 0 is not,
  // which rules out the dominated (0,1).
  DecisionReport s = gamma_maximax(DesirSet::generated(2, {}, ClosureSpec::kappa4()),
                                   {{1, 1}, {0, 1}});
  CHECK(s.optimal == Idx{0});
  CHECK(s.ties_resolved_by_boundary);
}

TEST_CASE("interval dominance") {
  DesirSet d = owa_set();
  CHECK(interval_dominance(d, {kAllais[0], kAllais[1]}).optimal == Idx{0});
  CHECK(interval_dominance(d, {kAllais[2], kAllais[3]}).optimal == Idx{1});
  DesirSet k4 = DesirSet::generated(2, {{-1, 1}}, ClosureSpec::kappa4());
  CHECK(interval_dominance(k4, {{0.2, 0.2}, {0, 1}}).optimal == Idx{0, 1});
  DecisionReport c = interval_dominance(k4, {{0, 0}, {10, 10}});
  CHECK(c.optimal == Idx{1});
  REQUIRE(c.rejected.size() == 1);
  CHECK(*c.rejected[0].by == 1);
}

TEST_CASE("maximality and e-admissibility under Kappa1") {
  std::vector<Gamble> j{{1, 0}, {0, 1}};
  CHECK(maximality_kappa1({}, j).optimal == Idx{0, 1});
  CHECK(e_admissible_kappa1({}, j).optimal == Idx{0, 1});
  std::vector<Gamble> half = linear_gens({0.5, 0.5});
  CHECK(maximality_kappa1(half, {{1, 0}, {0, 0.5}}).optimal == Idx{0});
  CHECK(e_admissible_kappa1(half, {{1, 0}, {0, 0.5}}).optimal == Idx{0});
  CHECK(maximality_kappa1(half, {{1, 0}}).optimal == Idx{0});
  // Strictly dominated pointwise.
  CHECK(e_admissible_kappa1({}, {{1, 1}, {0.5, 0}}).optimal == Idx{0});
  DecisionReport none = e_admissible_kappa1({{-1, -1}}, j);
  CHECK_FALSE(none.available);
  CHECK(none.criterion == "e-admissibility");
}

TEST_CASE("criteria over supplied decisive supersets") {
  DesirSet d = DesirSet::generated(3, {}, ClosureSpec::kappa4());
  CHECK_FALSE(generic_maximality(d, kAllais, std::nullopt).available);
  CHECK_FALSE(generic_e_admissibility(d, kAllais, std::nullopt).available);

  std::vector<DesirSet> one{owa_set()};
  CHECK(generic_maximality(d, {kAllais[0], kAllais[1]}, one).optimal == Idx{0});
  CHECK(generic_maximality(d, {kAllais[2], kAllais[3]}, one).optimal == Idx{1});

  std::vector<double> p{0.7, 0.2, 0.1}, q{0.1, 0.2, 0.7};
  std::vector<DesirSet> two{linear_set(p), linear_set(q)};
  std::vector<Gamble> opts{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0.45, 0.45, 0.45}};
  DecisionReport e = generic_e_admissibility(d, opts, two);
  // Argmax under p is option 0, under q option 2.
  CHECK(e.optimal == Idx{0, 2});
  DecisionReport m = generic_maximality(d, opts, two);
  // Option 3 beats 1 under both; nothing beats 0, 2 or 3 under both.
  CHECK(m.optimal == Idx{0, 2, 3});
}

TEST_CASE("precise sets make the price criteria agree") {
  Sampler s(41);
  for (int t = 0; t < 30; ++t) {
    std::vector<Gamble> opts = s.gambles(2 + s.index(3), 3);
    std::vector<DesirSet> sets{owa_set(), linear_set({0.2, 0.3, 0.5})};
    for (const DesirSet& d : sets) {
      Idx a = gamma_maximin(d, opts).optimal;
      CHECK(gamma_maximax(d, opts).optimal == a);
      CHECK(interval_dominance(d, opts).optimal == a);
    }
  }
}

TEST_CASE("nesting of the criteria") {
  Sampler s(43);
  int credal = 0;
  for (int t = 0; t < 60; ++t) {
    std::vector<Gamble> gens = s.gambles(2, 3);
    std::vector<Gamble> opts = s.gambles(3, 3);
    for (const ClosureSpec& spec : {ClosureSpec::kappa1(), ClosureSpec::kappa3(), ClosureSpec::kappa4()}) {
      DesirSet d = DesirSet::generated(3, gens, spec);
      if (avoids_partial_loss(d).value != Tri::True) continue;
      DecisionReport mm = gamma_maximin(d, opts);
      DecisionReport id = interval_dominance(d, opts);
      CHECK(subset(mm.optimal, id.optimal));
      CHECK_FALSE(mm.optimal.empty());
      CHECK(mm.optimal.size() + mm.rejected.size() == opts.size());
      if (spec.kind != OperatorKind::Kappa1) continue;
      if (is_empty(CredalPolytope{3, gens}).empty) continue;
      ++credal;
      Idx e = e_admissible_kappa1(gens, opts).optimal;
      Idx m = maximality_kappa1(gens, opts).optimal;
      CHECK_FALSE(e.empty());
      CHECK(subset(e, m));
      CHECK(subset(m, id.optimal));
    }
  }
  CHECK(credal > 10);
}

TEST_CASE("shifting every option by a constant changes nothing") {
  Sampler s(47);
  for (int t = 0; t < 20; ++t) {
    std::vector<Gamble> gens = s.gambles(2, 3);
    std::vector<Gamble> opts = s.gambles(3, 3);
    double c = s.uniform(-2, 2);
    std::vector<Gamble> moved;
    for (const Gamble& f : opts) moved.push_back(f + c);
    DesirSet d = DesirSet::generated(3, gens, ClosureSpec::kappa4());
    CHECK(gamma_maximin(d, opts).optimal == gamma_maximin(d, moved).optimal);
    CHECK(gamma_maximax(d, opts).optimal == gamma_maximax(d, moved).optimal);
    CHECK(interval_dominance(d, opts).optimal == interval_dominance(d, moved).optimal);
    CHECK(maximality_kappa1(gens, opts).optimal == maximality_kappa1(gens, moved).optimal);
    if (!is_empty(CredalPolytope{3, gens}).empty) {
      CHECK(e_admissible_kappa1(gens, opts).optimal == e_admissible_kappa1(gens, moved).optimal);
    }
    DesirSet o = owa_set();
    CHECK(gamma_maximin(o, opts).optimal == gamma_maximin(o, moved).optimal);
  }
}

TEST_CASE("uniformly dominated options are never optimal") {
  Sampler s(53);
  for (int t = 0; t < 30; ++t) {
    std::vector<Gamble> gens = s.gambles(2, 3);
    Gamble g = s.gamble(3);
    Gamble f = g - s.positive(3) - 0.01;
    std::vector<Gamble> opts{f, g};
    for (const ClosureSpec& spec : {ClosureSpec::kappa1(), ClosureSpec::kappa3(), ClosureSpec::kappa4()}) {
      DesirSet d = DesirSet::generated(3, gens, spec);
      if (avoids_partial_loss(d).value != Tri::True) continue;
      CHECK_FALSE(gamma_maximin(d, opts).is_optimal(0));
      CHECK_FALSE(gamma_maximax(d, opts).is_optimal(0));
    }
    CHECK_FALSE(maximality_kappa1(gens, opts).is_optimal(0));
    if (!is_empty(CredalPolytope{3, gens}).empty) {
      CHECK_FALSE(e_admissible_kappa1(gens, opts).is_optimal(0));
    }
  }
  // Weak dominance is not enough: equal price sets under the vacuous model.
  DesirSet v = DesirSet::generated(2, {}, ClosureSpec::kappa4());
  CHECK(gamma_maximin(v, {{0, 1}, {0, 2}}).optimal == Idx{0, 1});
}
