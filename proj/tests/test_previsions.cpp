#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "desir/previsions.hpp"
#include "desir/sampling.hpp"
#include "oracles.hpp"

using namespace desir;

namespace {

const std::vector<Gamble> kPair{{-1, 1}, {1, -2}};

DesirSet gen(std::vector<Gamble> g, ClosureSpec spec) {
  std::size_t n = g.empty() ? 2 : g.front().size();
  return DesirSet::generated(n, std::move(g), spec);
}

double lower(const DesirSet& d, const Gamble& f) { return lower_prevision(d, f).value(); }
double upper(const DesirSet& d, const Gamble& f) { return upper_prevision(d, f).value(); }

// Dominance closure: the best of inf f and min(f - g) over generators.
double kappa4_oracle(const std::vector<Gamble>& gens, const Gamble& f) {
  double best = f.min();
  for (const Gamble& g : gens) best = std::max(best, (f - g).min());
  return best;
}

// Single scalings: sup over λ >= 0 of the concave piecewise-linear
// min_ω (f - λg)(ω), evaluated at every breakpoint.
double kappa3_oracle(const std::vector<Gamble>& gens, const Gamble& f) {
  double best = f.min();
  for (const Gamble& g : gens) {
    if (g.max() < 0) return std::numeric_limits<double>::infinity();
    std::vector<double> cands{0.0};
    for (std::size_t a = 0; a < f.size(); ++a) {
      for (std::size_t b = a + 1; b < f.size(); ++b) {
        if (g[a] == g[b]) continue;
        double l = (f[a] - f[b]) / (g[a] - g[b]);
        if (l > 0) cands.push_back(l);
      }
    }
    for (double l : cands) best = std::max(best, (f - g * l).min());
  }
  return best;
}

// Kappa1 by vertex enumeration with λ boxed in [0, 50].
std::optional<double> kappa1_oracle(const std::vector<Gamble>& gens, const Gamble& f) {
  lp::Problem p;
  for (std::size_t j = 0; j < gens.size(); ++j) p.add_variable(0.0, 50.0, 0.0);
  std::size_t mu = p.add_variable(f.min() - 1, f.max() + 1, 1.0);
  for (std::size_t w = 0; w < f.size(); ++w) {
    std::vector<double> row(gens.size() + 1);
    for (std::size_t j = 0; j < gens.size(); ++j) row[j] = gens[j][w];
    row[mu] = 1.0;
    p.add_constraint(std::move(row), lp::Relation::LessEq, f[w]);
  }
  auto r = testing::brute_force_lp(p);
  if (!r) return std::nullopt;
  return r;
}

std::vector<ClosureSpec> coherent_specs() {
  return {ClosureSpec::kappa1(), ClosureSpec::kappa2(16), ClosureSpec::kappa3(),
          ClosureSpec::kappa4(), ClosureSpec::utility_warp(UtilityFn::odd_power(3)),
          ClosureSpec::neg_limit(1)};
}

DesirSet owa3() {
  return DesirSet::generated(
      3, {}, ClosureSpec::prevision_induced(PriceFunctional::owa({0.4, 0.2, 0.4})));
}

}  // namespace

TEST_CASE("scaling closure prices") {
  DesirSet d = gen(kPair, ClosureSpec::kappa3());
  CHECK(lower(d, {-2, 3}) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(lower(d, {3, -2}) == doctest::Approx(4.0 / 3).epsilon(1e-9));
  CHECK(lower(d, {1, 1}) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(upper(d, {-2, 3}) == doctest::Approx(-1.0 / 3).epsilon(1e-9));
  PrevisionBracket b = lower_prevision(d, {-2, 3});
  CHECK(b.certified);
  CHECK(b.width() <= 1e-9);
  // λ = 2.5 reaches the bound exactly.
  CHECK(b.boundary_in == Tri::True);
}

TEST_CASE("dominance closure prices are not homogeneous") {
  DesirSet d = gen({{-1, 1}}, ClosureSpec::kappa4());
  CHECK(lower(d, {-1, 1}) == doctest::Approx(0.0));
  CHECK(lower(d, {-2, 2}) == doctest::Approx(-1.0));
  CHECK(lower_prevision(d, {-1, 1}).boundary_in == Tri::True);
}

TEST_CASE("constants are priced at face value") {
  std::vector<DesirSet> sets{gen(kPair, ClosureSpec::kappa3()),
                             gen({{-1, 1}}, ClosureSpec::kappa4()),
                             gen({{-1, 2}}, ClosureSpec::kappa1()),
                             DesirSet::catalog(CatalogId::PreciseBinary)};
  for (const DesirSet& d : sets) {
    for (double c : {-2.5, 0.0, 1.75}) {
      CHECK(lower(d, Gamble::constant(2, c)) == doctest::Approx(c).epsilon(1e-9));
      CHECK(upper(d, Gamble::constant(2, c)) == doctest::Approx(c).epsilon(1e-9));
    }
  }
  // A constant is never attained from below: c - c = 0 is not a member.
  CHECK(lower_prevision(sets[1], Gamble::constant(2, 1.0)).boundary_in == Tri::False);
}

TEST_CASE("previsions match closed-form oracles") {
  Sampler s(17);
  int compared = 0;
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 2 + t % 2;
    std::vector<Gamble> g = s.gambles(1 + s.index(3), n);
    Gamble f = s.gamble(n);
    DesirSet d4 = DesirSet::generated(n, g, ClosureSpec::kappa4());
    CHECK(lower(d4, f) == doctest::Approx(kappa4_oracle(g, f)).epsilon(1e-8));
    double o3 = kappa3_oracle(g, f);
    DesirSet d3 = DesirSet::generated(n, g, ClosureSpec::kappa3());
    if (std::isfinite(o3) && o3 < f.max() + 0.9) {
      CHECK(lower(d3, f) == doctest::Approx(o3).epsilon(1e-8));
    }
    DesirSet d1 = DesirSet::generated(n, g, ClosureSpec::kappa1());
    PrevisionBracket b = lower_prevision(d1, f);
    auto o1 = kappa1_oracle(g, f);
    if (std::isfinite(b.value()) && o1 && b.value() < f.max() + 0.5) {
      CAPTURE(f.to_string());
      CHECK(b.value() == doctest::Approx(*o1).epsilon(1e-7));
      REQUIRE(b.cross_check);
      CHECK(std::abs(*b.cross_check - b.value()) <= 1e-6);
      ++compared;
    }
  }
  CHECK(compared > 60);
}

TEST_CASE("bisection relies on monotone buying prices") {
  Sampler s(5);
  for (int t = 0; t < 40; ++t) {
    std::vector<Gamble> g = s.gambles(2, 3);
    Gamble f = s.gamble(3);
    for (const ClosureSpec& spec : coherent_specs()) {
      DesirSet d = DesirSet::generated(3, g, spec);
      CHECK_FALSE(find_monotonicity_violation(d, f, 30, t));
    }
  }
  for (CatalogId id : all_catalog_ids()) {
    DesirSet d = DesirSet::catalog(id);
    Sampler q(3);
    CHECK_FALSE(find_monotonicity_violation(d, q.gamble(d.dim()), 200, 9));
  }
}

TEST_CASE("conjugacy and constant additivity") {
  Sampler s(99);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = 2 + t % 2;
    std::vector<Gamble> g = s.gambles(1 + s.index(2), n);
    Gamble f = s.gamble(n);
    for (const ClosureSpec& spec : coherent_specs()) {
      DesirSet d = DesirSet::generated(n, g, spec);
      PrevisionBracket up = upper_prevision(d, f);
      PrevisionBracket lo = lower_prevision(d, -f);
      if (!up.certified || !lo.certified) continue;
      if (!std::isfinite(up.value())) continue;
      CAPTURE(spec.name());
      CHECK(std::abs(up.value() + lo.value()) <= 2e-9);
      AdditivityReport a = check_constant_additivity(d, f, {-2.0, 0.0, 1.0});
      CHECK(a.holds());
    }
  }
  DesirSet d = gen(kPair, ClosureSpec::kappa3());
  AdditivityReport a = check_constant_additivity(d, {-2, 3}, {1.0, 0.0});
  CHECK(a.holds());
  CHECK(a.checks[0].shifted == doctest::Approx(1.5));
  CHECK(a.checks[1].shifted == doctest::Approx(0.5));
  Sampler q(2);
  for (int t = 0; t < 50; ++t) {
    CHECK(check_constant_additivity(owa3(), q.gamble(3), {-2.0}).holds());
  }
}

TEST_CASE("prevision axioms") {
  PAxiomsReport k3 = check_p_axioms(gen(kPair, ClosureSpec::kappa3()), 30, 1,
                                    {{-2, 3}, {3, -2}});
  CHECK(k3.passed());
  CHECK(k3.get("P1").findings.empty());
  CHECK(k3.get("P3").asserted);
  CHECK_FALSE(k3.get("P2").asserted);
  REQUIRE_FALSE(k3.get("P2").findings.empty());
  const PAxiomFinding& p2 = k3.get("P2").findings.front();
  CHECK(p2.lhs == doctest::Approx(1.0));
  CHECK(p2.rhs == doctest::Approx(11.0 / 6));

  PAxiomsReport k4 = check_p_axioms(gen({{-1, 1}}, ClosureSpec::kappa4()), 30, 1, {{-1, 1}});
  CHECK(k4.passed());
  REQUIRE_FALSE(k4.get("P3").findings.empty());
  const PAxiomFinding& p3 = k4.get("P3").findings.front();
  CHECK(p3.lambda == 2.0);
  CHECK(p3.lhs == doctest::Approx(-1.0));
  CHECK(p3.rhs == doctest::Approx(0.0));

  Sampler s(4);
  for (int t = 0; t < 10; ++t) {
    std::vector<Gamble> g = s.gambles(2, 3);
    DesirSet d1 = DesirSet::generated(3, g, ClosureSpec::kappa1());
    if (avoids_partial_loss(d1).value != Tri::True) continue;
    PAxiomsReport r = check_p_axioms(d1, 20, t);
    CHECK(r.passed());
    CHECK(r.get("P2").findings.empty());
    CHECK(r.get("P3").findings.empty());
  }
  PAxiomsReport k2 = check_p_axioms(gen({{-1, 2}, {2, -1}}, ClosureSpec::kappa2(16)), 15, 2);
  CHECK(k2.passed());
}

TEST_CASE("lower never exceeding upper") {
  LeqUprResult k3 =
      lpr_leq_upr_check(gen(kPair, ClosureSpec::kappa3()), 10, 1, {{-2, 3}});
  REQUIRE(k3.kind == LeqUprResult::Kind::WitnessPair);
  CHECK(*k3.f == Gamble{-2, 3});
  CHECK(k3.lower == doctest::Approx(0.5));
  CHECK(k3.upper == doctest::Approx(-1.0 / 3));
  CHECK(k3.g1->to_string() == Gamble{-1.5, 1.5}.to_string());
  CHECK((*k3.g2)[0] == doctest::Approx(1.0));
  CHECK((*k3.g2)[1] == doctest::Approx(-2.0));
  CHECK(k3.eps == doctest::Approx(0.5));

  LeqUprResult k4 = lpr_leq_upr_check(gen({{-1, 1}}, ClosureSpec::kappa4()), 10000, 2);
  CHECK(k4.kind == LeqUprResult::Kind::Holds);
  CHECK(k4.tested == 10000);
  CHECK(lpr_leq_upr_check(owa3(), 500, 3).kind == LeqUprResult::Kind::Holds);

  // A set without a generator pair: the price transactions themselves.
  DesirSet strip = DesirSet::closure(2, "strip", [](const Gamble& f) {
    return from_bool(is_positive(f) || f[0] + f[1] > -1.0, "in", "out");
  });
  LeqUprResult w = lpr_leq_upr_check(strip, 5, 1, {{1, 0}});
  REQUIRE(w.kind == LeqUprResult::Kind::WitnessPair);
  CHECK(strip.member(*w.g1).in());
  CHECK(strip.member(*w.g2).in());
  Gamble sum = *w.g1 + *w.g2;
  CHECK(sum[0] == doctest::Approx(-w.eps));
  CHECK(sum[1] == doctest::Approx(-w.eps));
}

TEST_CASE("precision") {
  DesirSet pb = DesirSet::catalog(CatalogId::PreciseBinary);
  CHECK(lower(pb, {-2, 1}) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(upper(pb, {-2, 1}) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(lower(pb, {-1, 0.5}) == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(upper(pb, {-1, 0.5}) == doctest::Approx(-0.5).epsilon(1e-9));
  PrecisionResult p = is_precise(pb, 3000, 1);
  CHECK(p.value == Tri::True);
  CHECK(p.tested == 3000);

  CHECK(is_precise(owa3(), 1000, 2).value == Tri::True);

  PrecisionResult k4 = is_precise(gen({{-1, 1}}, ClosureSpec::kappa4()), 100, 1);
  REQUIRE(k4.value == Tri::False);
  CHECK(*k4.counterexample == Gamble{1, 0});
  CHECK(k4.lower == doctest::Approx(0.0));
  CHECK(k4.upper == doctest::Approx(1.0));

  // The two-generator κ3 set fails already at the lower <= upper precondition.
  CHECK(is_precise(gen(kPair, ClosureSpec::kappa3()), 100, 1).value == Tri::False);
}

TEST_CASE("topological closure and the weak set") {
  DesirSet d = gen({{-1, 2}, {2, -1}}, ClosureSpec::kappa1());
  CHECK(closure_equals_weak_set(d, 100, 1).passed());
  CHECK(closure_equals_weak_set(gen({{-1, 1}}, ClosureSpec::kappa4()), 100, 1).passed());
  CHECK(closure_equals_weak_set(DesirSet::catalog(CatalogId::MedianStrict), 100, 1).passed());
  // Shift a gamble so its price is -0.2: adding 0.1 stays outside.
  Gamble f{0.5, -0.25};
  Gamble g = f - (lower(d, f) + 0.2);
  CHECK(lower(d, g) == doctest::Approx(-0.2));
  CHECK(d.member(g + 0.1).out());
  CHECK(d.member(g + 0.3).in());
}

TEST_CASE("sure loss and coherence of lower previsions") {
  Sampler s(6);
  std::vector<Gamble> fam = s.gambles(5, 3);
  PriceFunctional owa = PriceFunctional::owa({0.4, 0.2, 0.4});
  CHECK(lpr_avoids_sure_loss(functional_fn(owa), fam, ClosureSpec::kappa4()).value ==
        Tri::True);
  LowerPrevisionFn above = [](const Gamble& f) { return f.max() + 1; };
  LprCheck bad = lpr_avoids_sure_loss(above, fam, ClosureSpec::kappa4());
  CHECK(bad.value == Tri::False);
  CHECK(bad.witness.size() == 1);
  PriceFunctional lin = PriceFunctional::linear({0.2, 0.3, 0.5});
  CHECK(lpr_avoids_sure_loss(functional_fn(lin), fam, ClosureSpec::kappa2()).value ==
        Tri::True);
  CHECK(lpr_coherent(functional_fn(lin), fam, ClosureSpec::kappa1()).value == Tri::True);
  CHECK(lpr_coherent(functional_fn(lin), fam, ClosureSpec::kappa2()).value == Tri::True);

  // Prices raised uniformly by 0.1 combine into a sure loss.
  LowerPrevisionFn greedy = [&](const Gamble& f) { return lin(f) + 0.1; };
  LprCheck k2 = lpr_avoids_sure_loss(greedy, fam, ClosureSpec::kappa2());
  REQUIRE(k2.value == Tri::False);
  std::vector<double> sum(3, 0.0);
  for (std::size_t i = 0; i < k2.witness.size(); ++i) {
    CHECK(k2.multipliers[i] == std::round(k2.multipliers[i]));
    Gamble h = k2.witness[i] - greedy(k2.witness[i]);
    for (std::size_t w = 0; w < 3; ++w) sum[w] += k2.multipliers[i] * h[w];
  }
  CHECK(*std::max_element(sum.begin(), sum.end()) < 0);
}

TEST_CASE("closed-form lower prevision checks agree with the generic forms") {
  Sampler s(12);
  int disagreements = 0, compared = 0;
  for (int t = 0; t < 60; ++t) {
    std::vector<Gamble> g = s.gambles(2, 2);
    std::vector<Gamble> fam = s.gambles(3, 2);
    for (const ClosureSpec& spec : {ClosureSpec::kappa1(), ClosureSpec::kappa3(),
                                    ClosureSpec::kappa4()}) {
      DesirSet d = DesirSet::generated(2, g, spec);
      if (avoids_partial_loss(d).value != Tri::True) continue;
      LowerPrevisionFn p = lower_prevision_fn(d);
      double bump = s.uniform(-0.5, 0.5);
      LowerPrevisionFn q = [p, bump](const Gamble& f) { return p(f) + bump; };
      for (const LowerPrevisionFn& fn : {p, q}) {
        LprCheck a = lpr_avoids_sure_loss(fn, fam, spec);
        LprCheck b = lpr_avoids_sure_loss_generic(fn, fam, spec);
        LprCheck c = lpr_coherent(fn, fam, spec);
        LprCheck e = lpr_coherent_generic(fn, fam, spec);
        ++compared;
        disagreements += (a.value != b.value) + (c.value != e.value);
      }
      // A coherent set induces a coherent lower prevision.
      CHECK(lpr_coherent(p, fam, spec).value == Tri::True);
    }
  }
  CHECK(compared > 100);
  CHECK(disagreements == 0);
}

TEST_CASE("conditioning bounds") {
  Gamble f{1, -1, 0};
  Event b = Event::of(3, {0, 1});
  GbrResult d1 = gbr_conditional(DesirSet::catalog(CatalogId::MedianStrict), f, b);
  CHECK(d1.gbr_branch);
  CHECK(d1.lower_b.value() == doctest::Approx(1.0));
  CHECK(d1.gbr.value() == doctest::Approx(-1.0));
  CHECK(d1.member_sup.value() == doctest::Approx(-1.0));
  CHECK(d1.weak_sup.value() == doctest::Approx(1.0));
  CHECK(d1.sandwich_holds);

  GbrResult d2 = gbr_conditional(DesirSet::catalog(CatalogId::MedianWeak), f, b);
  CHECK(d2.gbr.value() == doctest::Approx(-1.0));
  CHECK(d2.member_sup.value() == doctest::Approx(1.0));
  CHECK(d2.weak_sup.value() == doctest::Approx(1.0));
  CHECK(d2.sandwich_holds);

  GbrResult d3 = gbr_conditional(DesirSet::catalog(CatalogId::GbrD3), f, b);
  CHECK(d3.gbr_branch);
  CHECK(d3.member_sup.value() == doctest::Approx(0.5));
  CHECK(d3.sandwich_holds);
  CHECK(d3.lower_b.value() == doctest::Approx(0.1));
  CHECK(d3.gbr.value() == doctest::Approx(-0.9));
  CHECK(d3.weak_sup.value() == doctest::Approx(0.5));

  // P̲(B) = 0: the second branch returns inf_B f.
  DesirSet vac = DesirSet::generated(3, {}, ClosureSpec::kappa4());
  GbrResult v = gbr_conditional(vac, f, b);
  CHECK_FALSE(v.gbr_branch);
  CHECK(v.gbr.value() == -1.0);
}

TEST_CASE("conditioning a linear model follows Bayes' rule") {
  // p = (0.2, 0.3, 0.5) as a κ1 set: gambles with nonnegative expectation.
  std::vector<Gamble> gens{{0.3, -0.2, 0}, {-0.3, 0.2, 0}, {0.5, 0, -0.2}, {-0.5, 0, 0.2}};
  DesirSet d = DesirSet::generated(3, gens, ClosureSpec::kappa1());
  Gamble f{1, -1, 0};
  Event b = Event::of(3, {0, 1});
  GbrResult r = gbr_conditional(d, f, b);
  // E[f | B] = (0.2 - 0.3) / 0.5.
  CHECK(r.gbr.value() == doctest::Approx(-0.2).epsilon(1e-7));
  CHECK(r.weak_sup.value() == doctest::Approx(-0.2).epsilon(1e-7));
  CHECK(r.member_sup.value() == doctest::Approx(-0.2).epsilon(1e-7));
}

TEST_CASE("marginal extension previsions") {
  Partition part({Event::of(4, {0, 1}), Event::of(4, {2, 3})});
  // Uniform marginal on the blocks, uniform conditionals.
  DesirSet marg = DesirSet::generated(4, {{1, 1, -1, -1}, {-1, -1, 1, 1}},
                                      ClosureSpec::kappa1());
  std::vector<DesirSet> conds{
      DesirSet::generated(4, {{1, -1, 0, 0}, {-1, 1, 0, 0}}, ClosureSpec::kappa1()),
      DesirSet::generated(4, {{0, 0, 1, -1}, {0, 0, -1, 1}}, ClosureSpec::kappa1())};
  Sampler s(8);
  for (int t = 0; t < 20; ++t) {
    Gamble f = s.gamble(4);
    double mean = (f[0] + f[1] + f[2] + f[3]) / 4;
    PrevisionBracket p =
        marginal_extension_prevision(marg, conds, part, ClosureSpec::kappa1(), f);
    CHECK(p.value() == doctest::Approx(mean).epsilon(1e-7));
  }
  // Measurable gambles: the marginal alone.
  Gamble m{2, 2, -1, -1};
  CHECK(marginal_extension_prevision(marg, conds, part, ClosureSpec::kappa1(), m).value() ==
        doctest::Approx(lower(marg, m)));
  CHECK_THROWS_AS(
      marginal_extension_prevision(marg, conds, part, ClosureSpec::kappa3(), m),
      std::invalid_argument);
}
