#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "desir/consistency.hpp"
#include "desir/previsions.hpp"
#include "desir/structure.hpp"

using namespace desir;

namespace {

Partition halves() { return Partition({Event::of(4, {0, 1}), Event::of(4, {2, 3})}); }

}  // namespace

TEST_CASE("marginal membership") {
  DesirSet d = DesirSet::generated(2, {{-1, 1}}, ClosureSpec::kappa4());
  Partition omega = Partition::trivial(2);
  CHECK(marginal_member(d, {0.5, 0.5}, omega).in());
  CHECK(marginal_member(d, {-0.5, -0.5}, omega).out());
  // Positive, hence in d, but not constant.
  CHECK(d.member({1, 2}).in());
  CHECK(marginal_member(d, {1, 2}, omega).out());
  CHECK(marginal_member(d, {1, 2}, omega).via == "not-measurable");
}

TEST_CASE("conditional membership") {
  DesirSet d = DesirSet::catalog(CatalogId::CongNatEx);
  Event b = Event::of(4, {0, 1});
  CHECK(conditional_member(d, {0, 1, 0, 0}, b).in());
  CHECK(conditional_member(d, {0, 1, 0, 1}, b).out());
  CHECK(conditional_member(d, {0, -1, 0, 0}, b).out());
  CHECK_THROWS_AS(conditional_member(d, {0, 1, 0, 0}, Event(std::vector<bool>(4, false))),
                  std::invalid_argument);
}

TEST_CASE("assembling per-block sets") {
  DesirSet d = DesirSet::catalog(CatalogId::CongNatEx);
  ConditionalFamily fam = ConditionalFamily::from_set(d, halves());
  CHECK(assembled_member(fam, {-1, 1, -1, 1}).in());
  CHECK(assembled_member(fam, Gamble::zero(4)).out());
  CHECK(assembled_member(fam, {0, 0, -1, 1}).in());
  CHECK(assembled_member(fam, {-1, 1, 1, -1}).out());
  DesirSet whole = assembled_set(fam);
  CHECK(whole.member({-1, 1, -1, 1}).in());

  Sampler s(2);
  for (int t = 0; t < 50; ++t) {
    std::vector<Gamble> g = s.gambles(2, 4);
    DesirSet k = DesirSet::generated(4, g, t % 2 ? ClosureSpec::kappa1() : ClosureSpec::kappa4());
    CHECK(assembled_member(ConditionalFamily::from_set(k, halves()), Gamble::zero(4)).out());
  }
  CHECK_THROWS_AS(ConditionalFamily::from_blocks(
                      halves(), {DesirSet::generated(4, {{1, -1, 1, 0}}, ClosureSpec::kappa4()),
                                 DesirSet::generated(4, {}, ClosureSpec::kappa4())}),
                  std::invalid_argument);
}

TEST_CASE("conglomerability") {
  DesirSet d = DesirSet::catalog(CatalogId::CongNatEx);
  ConditionalFamily fam = ConditionalFamily::from_set(d, halves());
  ConglomerabilityResult r = conglomerability_check(d, fam, 100, 1);
  REQUIRE(r.witness);
  CHECK(*r.witness == Gamble{-1, 1, -1, 1});
  CHECK(r.source == "grid");
  // Closing the assembled witness under the set's own operator loses.
  LossVerdict v = avoids_partial_loss(DesirSet::generated(4, {*r.witness}, ClosureSpec::neg_limit(1)));
  CHECK(v.value == Tri::False);

  CHECK_FALSE(conglomerability_check(d, ConditionalFamily::from_set(d, Partition::trivial(4)), 100, 1)
                  .witness);

  Sampler s(31);
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    std::vector<Gamble> g = s.gambles(3, 4);
    ClosureSpec spec = t % 2 ? ClosureSpec::kappa1() : ClosureSpec::kappa2(8);
    DesirSet k = DesirSet::generated(4, g, spec);
    if (avoids_partial_loss(k).value != Tri::True) continue;
    ++checked;
    ConglomerabilityResult c = conglomerability_check(k, ConditionalFamily::from_set(k, halves()), 30, t);
    CAPTURE(spec.name());
    CHECK_FALSE(c.witness);
    CHECK(c.tested > 0);
  }
  CHECK(checked > 5);
}

TEST_CASE("restricted sets are closed relative to their families") {
  Sampler s(13);
  for (int t = 0; t < 20; ++t) {
    std::vector<Gamble> g = s.gambles(2, 4);
    DesirSet d = DesirSet::generated(4, g, ClosureSpec::kappa4());
    if (avoids_partial_loss(d).value != Tri::True) continue;
    Partition p = halves();
    auto measurable = [](Sampler& q) {
      double a = q.uniform(-2, 2), b = q.uniform(-2, 2);
      return Gamble{a, a, b, b};
    };
    CHECK(coherent_relative(marginal_set(d, p), d, measurable, 100, t).flags.empty());
    Event b = p.blocks()[0];
    auto on_b = [b](Sampler& q) { return cutoff(q.gamble(4), b); };
    CHECK(coherent_relative(conditional_set(d, b), d, on_b, 100, t).flags.empty());
    // Positive gambles that are not measurable fall outside the marginal.
    CHECK(marginal_set(d, p).member({1, 2, 3, 4}).out());
  }
}

TEST_CASE("marginal extension sets") {
  Partition p = halves();
  DesirSet marg = DesirSet::generated(4, {{1, 1, -1, -1}, {-1, -1, 1, 1}}, ClosureSpec::kappa1());
  ConditionalFamily fam = ConditionalFamily::from_blocks(
      p, {DesirSet::generated(4, {{1, -1, 0, 0}, {-1, 1, 0, 0}}, ClosureSpec::kappa1()),
          DesirSet::generated(4, {{0, 0, 1, -1}, {0, 0, -1, 1}}, ClosureSpec::kappa1())});
  DesirSet ext = marginal_extension_set(marg, fam, ClosureSpec::kappa1());
  CHECK(marginal_member(ext, {1, 1, -1, -1}, p).in());
  CHECK(conditional_member(ext, {1, -1, 0, 0}, p.blocks()[0]).in());
  CHECK(conditional_member(ext, {0, 0, -1, 1}, p.blocks()[1]).in());
  // Precise models hold both g and -g, hence 0.
  CHECK(ext.member(Gamble::zero(4)).in());

  std::vector<DesirSet> conds = fam.per_block;
  Sampler s(5);
  for (int t = 0; t < 30; ++t) {
    Gamble f = s.gamble(4);
    double composed =
        marginal_extension_prevision(marg, conds, p, ClosureSpec::kappa1(), f).value();
    CHECK(lower_prevision(ext, f).value() == doctest::Approx(composed).epsilon(1e-7));
  }

  CHECK_THROWS_AS(marginal_extension_set(marg, fam, ClosureSpec::neg_limit(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(marginal_extension_set(marg, ConditionalFamily::from_set(marg, p),
                                         ClosureSpec::kappa1()),
                  std::invalid_argument);
}

TEST_CASE("marginal extension of random coherent inputs") {
  Partition p = halves();
  Sampler s(77);
  int built = 0;
  for (int t = 0; t < 80; ++t) {
    double a = s.uniform(-2, 2), b = s.uniform(-2, 2);
    DesirSet marg = DesirSet::generated(4, {{a, a, b, b}}, ClosureSpec::kappa1());
    std::vector<DesirSet> blocks;
    for (const Event& e : p.blocks()) {
      blocks.push_back(DesirSet::generated(4, {cutoff(s.gamble(4), e), cutoff(s.gamble(4), e)},
                                           ClosureSpec::kappa1()));
    }
    bool coherent = avoids_partial_loss(marg).value == Tri::True;
    for (const DesirSet& x : blocks) coherent &= avoids_partial_loss(x).value == Tri::True;
    if (!coherent) continue;
    ++built;
    ConditionalFamily fam = ConditionalFamily::from_blocks(p, blocks);
    for (const ClosureSpec& spec : {ClosureSpec::kappa1(), ClosureSpec::kappa3(), ClosureSpec::kappa4()}) {
      DesirSet ext = marginal_extension_set(marg, fam, spec);
      CAPTURE(spec.name());
      CHECK(avoids_partial_loss(ext).value == Tri::True);
      CHECK(marginal_member(ext, {a, a, b, b}, p).in());
      for (std::size_t k = 0; k < 2; ++k) {
        for (const Gamble& g : blocks[k].generators()) {
          CHECK(conditional_member(ext, g, p.blocks()[k]).in());
        }
      }
    }
    Gamble f = s.gamble(4);
    DesirSet k4 = marginal_extension_set(marg, fam, ClosureSpec::kappa4());
    std::vector<DesirSet> conds4;
    for (const DesirSet& x : blocks) conds4.push_back(DesirSet::generated(4, x.generators(), ClosureSpec::kappa4()));
    DesirSet marg4 = DesirSet::generated(4, marg.generators(), ClosureSpec::kappa4());
    double formula = marginal_extension_prevision(marg4, conds4, p, ClosureSpec::kappa4(), f).value();
    CAPTURE(f.to_string());
    CHECK(lower_prevision(k4, f).value() == doctest::Approx(formula).epsilon(1e-7));
  }
  CHECK(built > 5);
}
