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

// Scenario files: a possibility space, named gambles, one set of desirable
// gambles and a list of queries against it.
//
//   {
//     "space": ["w1", "w2"],
//     "gambles": {"g": [-1, 1], "f": [-2, 3]},
//     "operator": {"kind": "kappa3", "params": {}},
//     "generators": ["g"],            // or "catalog": "median-strict"
//     "queries": [{"type": "lower-prevision", "args": {"gamble": "f"}}],
//     "tol": 1e-9,
//     "seed": 7
//   }
//
// Wherever a gamble is expected, a name or an inline vector is accepted.
// Events are lists of outcome labels or indices; partitions are lists of
// events.

#ifndef DESIR_TOOLS_SCENARIO_HPP_
#define DESIR_TOOLS_SCENARIO_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "desir/desir_set.hpp"

namespace desir::cli {

using nlohmann::json;

// Malformed scenario or query arguments; exit code 2.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scenario {
  std::vector<std::string> space;
  std::map<std::string, Gamble> gambles;
  // Absent for catalog sets, which carry their own operator.
  std::optional<ClosureSpec> spec;
  std::vector<std::string> generators;
  std::optional<CatalogId> catalog;
  json queries = json::array();
  double tol = 1e-9;
  std::uint64_t seed = 0;

  DesirSet set() const;
  json describe() const;
};

Scenario parse_scenario(const json& j);
Scenario load_scenario(const std::string& path);

struct RunOverrides {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
};

struct RunResult {
  json report;
  // 0, or 1 when a query failed, or 3 when one failed numerically.
  int exit_code = 0;
};

// Runs the queries in order, one record per query. Failing queries become
// records with an "error" field; ScenarioError escapes.
RunResult run_scenario(const Scenario& s, const RunOverrides& o = {});

// Columns index,type,verdict,lo,hi,detail.
std::string to_csv(const json& report);

const std::vector<std::string>& demo_names();
// {"demo": name, "rows": [{quantity, reference, computed, agrees, note}]}.
// Throws ScenarioError for unknown names.
json run_demo(const std::string& name, std::uint64_t seed);
std::string demo_table(const json& demo);
std::string demo_csv(const json& demo);

// Membership over [-3, 3]^2 on a resolution x resolution grid, as SVG 1.1.
// `marks` are gambles drawn as crosses: names, JSON vectors or "x,y". Throws
// ScenarioError unless the space has two outcomes.
std::string plot_svg(const Scenario& s, const std::vector<std::string>& marks,
                     int resolution);

}  // namespace desir::cli

#endif  // DESIR_TOOLS_SCENARIO_HPP_
