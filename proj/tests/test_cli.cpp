#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include <spdlog/spdlog.h>

#include "scenario.hpp"

using namespace desir;
using namespace desir::cli;

namespace {

std::string scenario(const std::string& name) {
  return std::string(DESIR_SCENARIO_DIR) + "/" + name;
}

double value(const json& rec) { return rec["value"].get<double>(); }

const bool kQuiet = [] {
  spdlog::set_level(spdlog::level::warn);
  return true;
}();

}  // namespace

TEST_CASE("allais scenario") {
  RunResult r = run_scenario(load_scenario(scenario("allais.json")));
  CHECK(r.exit_code == 0);
  const json& rec = r.report["records"];
  const double expected[] = {1.0, 0.96, 0.6, 0.76};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(value(rec[i]) - expected[i]) <= 1e-12);
  CHECK(rec[5]["optimal"] == json::array({0}));
  CHECK(rec[6]["optimal"] == json::array({1}));
  CHECK(rec[6]["criterion"] == "gamma-maximin");
  CHECK(rec[10]["verdict"] == "StrictlyNegative");
  CHECK(rec[11]["verdict"] == "all-agree");
}

TEST_CASE("kappa3 previsions scenario") {
  RunResult r = run_scenario(load_scenario(scenario("kappa3-previsions.json")));
  const json& rec = r.report["records"];
  CHECK(value(rec[0]) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(value(rec[1]) == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
  CHECK(value(rec[2]) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rec[6]["empty"] == true);
  // Records echo their inputs.
  CHECK(rec[0]["gamble"] == json::array({-2.0, 3.0}));
  CHECK(rec[0]["args"]["gamble"] == "a");
  CHECK(r.report["scenario"]["generators"] == json::array({"g1", "g2"}));
}

TEST_CASE("other bundled scenarios") {
  RunResult c = run_scenario(load_scenario(scenario("congnatex.json")));
  CHECK(c.exit_code == 0);
  CHECK(c.report["records"][3]["witness"] == json::array({-1.0, 1.0, -1.0, 1.0}));
  CHECK(c.report["records"][3]["witness_closure_apl"]["verdict"] == "false");

  RunResult p = run_scenario(load_scenario(scenario("precise-binary.json")));
  CHECK(value(p.report["records"][0]) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(value(p.report["records"][2]) == doctest::Approx(-0.5).epsilon(1e-6));

  RunResult k = run_scenario(load_scenario(scenario("credal.json")));
  CHECK(k.report["records"][0]["vertices"].size() == 2);
  CHECK(k.report["records"][3]["optimal"] == json::array({0, 1}));

  RunResult g = run_scenario(load_scenario(scenario("gbr-bounds.json")));
  CHECK(g.report["records"][0]["member_sup"]["value"].get<double>() ==
        doctest::Approx(0.5).epsilon(1e-6));
  CHECK(g.report["records"][3]["verdict"] == "differences-flagged");
}

TEST_CASE("reports are deterministic") {
  for (const char* name : {"allais.json", "kappa3-previsions.json", "gbr-bounds.json",
                           "congnatex.json", "precise-binary.json", "credal.json"}) {
    Scenario s = load_scenario(scenario(name));
    CHECK_MESSAGE(run_scenario(s).report.dump() == run_scenario(s).report.dump(), name);
  }
}

TEST_CASE("schema errors") {
  CHECK_THROWS_AS(load_scenario(std::string(DESIR_FIXTURE_DIR) + "/bad-length.json"), ScenarioError);
  CHECK_THROWS_AS(load_scenario(std::string(DESIR_FIXTURE_DIR) + "/both-sources.json"), ScenarioError);
  json base = json::parse(R"({"space": ["a", "b"], "gambles": {"g": [-1, 1]},
                              "operator": {"kind": "kappa1"}, "generators": ["g"]})");
  CHECK_NOTHROW(parse_scenario(base));
  json bad = base;
  bad["operator"]["kind"] = "kappa9";
  CHECK_THROWS_AS(parse_scenario(bad), ScenarioError);
  bad = base;
  bad["generators"] = json::array({"h"});
  CHECK_THROWS_AS(parse_scenario(bad), ScenarioError);
  bad = base;
  bad["queries"] = json::array({{{"type", "member"}, {"args", {{"gamble", json::array({1, 2, 3})}}}}});
  CHECK_THROWS_AS(run_scenario(parse_scenario(bad)), ScenarioError);
  bad["queries"] = json::array({{{"type", "frobnicate"}}});
  CHECK_THROWS_AS(run_scenario(parse_scenario(bad)), ScenarioError);
  bad["queries"] = json::array({{{"type", "marginal"}, {"args", {{"gamble", "g"}, {"partition", json::array({json::array({"a"})})}}}}});
  CHECK_THROWS_AS(run_scenario(parse_scenario(bad)), ScenarioError);
}

TEST_CASE("query failures become records") {
  json j = json::parse(R"({"space": ["a", "b"], "gambles": {"g": [-1, 1]},
                           "operator": {"kind": "kappa3"}, "generators": ["g"],
                           "queries": [{"type": "decide",
                                        "args": {"criterion": "maximality", "options": ["g"]}},
                                       {"type": "vertices"},
                                       {"type": "marginal-extension",
                                        "args": {"gamble": "g", "partition": [["a"], ["b"]]}}]})");
  RunResult r = run_scenario(parse_scenario(j));
  const json& rec = r.report["records"];
  CHECK(rec[0]["verdict"] == "unavailable");
  CHECK(rec[1]["vertices"] == json::array({{0.0, 1.0}, {0.5, 0.5}}));
  CHECK(rec[2].contains("error"));
  CHECK(r.exit_code == 1);
  CHECK(r.report["errors"] == 1);
}

TEST_CASE("csv") {
  RunResult r = run_scenario(load_scenario(scenario("kappa3-previsions.json")));
  std::string csv = to_csv(r.report);
  CHECK(csv.rfind("index,type,verdict,lo,hi,detail\n", 0) == 0);
  CHECK(csv.find("\n6,credal,empty,") != std::string::npos);
  std::size_t lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == r.report["records"].size() + 1);
}

TEST_CASE("demos") {
  for (const std::string& name : demo_names()) {
    json d = run_demo(name, 1);
    CHECK(d["demo"] == name);
    CHECK_FALSE(d["rows"].empty());
    CHECK(demo_table(d).find("quantity") != std::string::npos);
    for (const json& row : d["rows"]) {
      // Only the reference gbr-d3 outer bounds disagree, and they say so.
      if (!row["agrees"].get<bool>()) CHECK(row.contains("note"));
    }
  }
  CHECK_THROWS_AS(run_demo("nope", 1), ScenarioError);
}

TEST_CASE("plot") {
  Scenario pb = load_scenario(scenario("precise-binary.json"));
  std::string svg = plot_svg(pb, {"f", "-1,0.5"}, 30);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("version=\"1.1\"") != std::string::npos);
  CHECK(svg.find("#5b8cc9") != std::string::npos);
  CHECK(plot_svg(pb, {}, 30) == plot_svg(pb, {}, 30));
  CHECK_THROWS_AS(plot_svg(load_scenario(scenario("allais.json")), {}, 30), ScenarioError);
  CHECK_THROWS_AS(plot_svg(pb, {"nope"}, 30), ScenarioError);

  // A single Kappa1 generator: the cone through (-1, 2) and the positive
  // orthant, a half-plane-like region.
  Scenario k1 = load_scenario(scenario("credal.json"));
  std::string s1 = plot_svg(k1, {}, 20);
  CHECK(s1.find("<circle") != std::string::npos);
}
