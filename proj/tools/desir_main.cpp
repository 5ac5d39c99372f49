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

// desir run|plot|demo. DESIR_LOG=off|error|warn|info|debug sets stderr
// verbosity (default warn).
//
// Exit codes: 0 ok, 1 a query failed, 2 bad scenario or arguments,
// 3 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"

#include "desir/lp.hpp"
#include "scenario.hpp"

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("desir");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("DESIR_LOG")) {
    auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to off.
    if (level == spdlog::level::off && std::string(env) != "off") {
      spdlog::warn("DESIR_LOG: unknown level '{}'", env);
    } else {
      spdlog::set_level(level);
    }
  }
}

int emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) {
    spdlog::error("cannot write {}", out);
    return 1;
  }
  f << text;
  spdlog::info("wrote {}", out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Sets of desirable gambles under nonlinear closure operators"};
  app.require_subcommand(1);

  std::string scenario_path, out, format;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  int resolution = 300;
  std::vector<std::string> marks;
  std::string demo_name;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--out", out, "Output file (stdout when absent)");
    c->add_option("--seed", seed, "Seed for sampling queries");
  };

  CLI::App* run = app.add_subcommand("run", "Run the queries of a scenario file");
  run->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->default_val("json");
  run->add_option("--tol", tol, "Prevision tolerance")->check(CLI::PositiveNumber);
  add_common(run);

  CLI::App* plot = app.add_subcommand("plot", "Draw a binary set as SVG");
  plot->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  plot->add_option("--resolution", resolution, "Grid cells per side")->default_val(300);
  plot->add_option("--mark", marks, "Gamble to mark: a name, or --mark=x,y");
  add_common(plot);

  CLI::App* demo = app.add_subcommand("demo", "Run a built-in demonstration");
  demo->add_option("name", demo_name, "allais, gbr-bounds, conglomerability, kappa-zoo")
      ->required();
  demo->add_option("--format", format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->default_val("table");
  add_common(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  using namespace desir::cli;
  try {
    if (*run) {
      Scenario s = load_scenario(scenario_path);
      RunResult r = run_scenario(s, {tol, seed});
      std::string text = format == "csv" ? to_csv(r.report) : r.report.dump(2) + "\n";
      int w = emit(text, out);
      return r.exit_code ? r.exit_code : w;
    }
    if (*plot) {
      Scenario s = load_scenario(scenario_path);
      return emit(plot_svg(s, marks, resolution), out);
    }
    json d = run_demo(demo_name, seed.value_or(1));
    std::string text = format == "json" ? d.dump(2) + "\n"
                       : format == "csv" ? demo_csv(d)
                                         : demo_table(d);
    return emit(text, out);
  } catch (const ScenarioError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const desir::lp::NumericalError& e) {
    spdlog::error("numerical failure: {}", e.what());
    return 3;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
}
