#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "desir/gamble.hpp"

using desir::Event;
using desir::Gamble;
using desir::GambleClass;
using desir::Partition;

TEST_CASE("gneq") {
  CHECK(desir::gneq({1, 1}, {0, 1}));
  CHECK_FALSE(desir::gneq({1, 1}, {1, 1}));
  CHECK_FALSE(desir::gneq({1, 0}, {0, 1}));
  CHECK_THROWS_AS(desir::gneq({1, 0}, {0, 1, 2}), desir::DimensionError);
}

TEST_CASE("classify") {
  CHECK(desir::classify({0, 2}) == GambleClass::Positive);
  CHECK(desir::classify({0, 0}) == GambleClass::NegativeOrZero);
  CHECK(desir::classify({-1, -2}) == GambleClass::StrictlyNegative);
  CHECK(desir::classify({-1, 0}) == GambleClass::NegativeOrZero);
  CHECK(desir::classify({-1, 2}) == GambleClass::Other);
  CHECK(desir::is_nonpositive(GambleClass::StrictlyNegative));
}

TEST_CASE("cutoff") {
  CHECK(desir::cutoff({1, -1, 0}, Event::of(3, {0, 1})) == Gamble{1, -1, 0});
  CHECK(desir::cutoff({3, 4}, Event::full(2)) == Gamble{3, 4});
  CHECK_THROWS_AS(desir::cutoff({3, 4}, Event(std::vector<bool>{false, false})),
                  std::invalid_argument);
}

TEST_CASE("is_measurable") {
  Partition p({Event::of(3, {0, 1}), Event::of(3, {2})});
  CHECK(desir::is_measurable({2, 2, 5}, p));
  CHECK_FALSE(desir::is_measurable({2, 3, 5}, p));
  CHECK(desir::is_measurable(Gamble::constant(3, 7.5), p));
  CHECK(desir::is_measurable(Gamble::constant(3, -1), Partition::trivial(3)));
}

TEST_CASE("construction errors") {
  CHECK_THROWS(desir::PossibilitySpace({"a"}));
  CHECK_THROWS(desir::PossibilitySpace({"a", "a"}));
  CHECK_THROWS(Gamble{1.0, std::numeric_limits<double>::infinity()});
  CHECK_THROWS(Partition({Event::of(3, {0, 1}), Event::of(3, {1, 2})}));
  CHECK_THROWS(Partition({Event::of(3, {0})}));
  desir::PossibilitySpace s({"w1", "w2", "w3"});
  CHECK(s.index_of("w2") == 1);
  CHECK_THROWS_AS(s.index_of("w9"), std::out_of_range);
}

TEST_CASE("order statistics") {
  Gamble f{3, -1, 2};
  CHECK(f.min() == -1);
  CHECK(f.max() == 3);
  CHECK(f.median() == 2);
  CHECK(Gamble({1, 4}).median() == 2.5);
}

namespace {

Gamble random_gamble(std::mt19937_64& rng, std::size_t n) {
  // Small integer grid so that equal coordinates actually occur.
  std::uniform_int_distribution<int> d(-2, 2);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return Gamble(std::move(v));
}

}  // namespace

TEST_CASE("gneq is a strict partial order on random triples") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 5000; ++t) {
    Gamble f = random_gamble(rng, 3);
    Gamble g = random_gamble(rng, 3);
    Gamble h = random_gamble(rng, 3);
    CHECK_FALSE(desir::gneq(f, f));
    if (desir::gneq(f, g) && desir::gneq(g, h)) CHECK(desir::gneq(f, h));
    CHECK_FALSE((desir::gneq(f, g) && desir::gneq(g, f)));
  }
}

TEST_CASE("cutoff properties on random gambles") {
  std::mt19937_64 rng(11);
  std::bernoulli_distribution coin(0.5);
  for (int t = 0; t < 2000; ++t) {
    Gamble f = random_gamble(rng, 4);
    std::vector<bool> m(4);
    for (std::size_t i = 0; i < 4; ++i) m[i] = coin(rng);
    Event b(m);
    if (b.empty() || b.complement().empty()) continue;
    Gamble bf = desir::cutoff(f, b);
    CHECK(desir::cutoff(bf, b) == bf);
    CHECK(bf + desir::cutoff(f, b.complement()) == f);
  }
}

TEST_CASE("classify classes are exclusive") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 2000; ++t) {
    Gamble f = random_gamble(rng, 3);
    GambleClass c = desir::classify(f);
    bool pos = desir::gneq(f, Gamble::zero(3));
    bool nonpos = desir::dominates(Gamble::zero(3), f);
    CHECK(pos == (c == GambleClass::Positive));
    CHECK(nonpos == desir::is_nonpositive(c));
    CHECK((f.max() < 0) == (c == GambleClass::StrictlyNegative));
  }
}
