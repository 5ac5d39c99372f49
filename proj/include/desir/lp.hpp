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

// Dense two-phase simplex with Bland's rule.
//
// Problems here are tiny (a handful of generators times a handful of
// outcomes), so the solver keeps a full tableau and favours determinism over
// speed: the same problem always produces the same pivot sequence.
//
// An infeasible problem comes with a Farkas certificate `y`, one multiplier
// per constraint row, sign-conforming to the row relation (y >= 0 on `>=`
// rows, y <= 0 on `<=` rows, free on `=` rows) and such that
//
//     y . b  >  sup { (sum_i y_i a_i) . x : lo <= x <= hi }.
//
// Every feasible x would give the opposite inequality, so the certificate
// proves infeasibility on its own. `verify_farkas` checks it.

#ifndef DESIR_LP_HPP_
#define DESIR_LP_HPP_

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace desir::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { GreaterEq, Equal, LessEq };
enum class Sense { Maximize, Minimize };
enum class Status { Optimal, Infeasible, Unbounded, NumericalFailure };

const char* to_string(Status s);

struct Constraint {
  std::vector<double> coeffs;
  Relation rel;
  double rhs;
};

struct VarBounds {
  double lo = 0.0;
  double hi = kInf;
};

struct Problem {
  Sense sense = Sense::Maximize;
  std::vector<double> objective;
  std::vector<VarBounds> bounds;
  std::vector<Constraint> constraints;

  std::size_t num_vars() const { return objective.size(); }

  /// Appends a variable and returns its index. Existing constraints get a
  /// zero coefficient for it.
  std::size_t add_variable(double lo = 0.0, double hi = kInf, double obj = 0.0);
  void add_constraint(std::vector<double> coeffs, Relation rel, double rhs);
};

struct Result {
  Status status = Status::NumericalFailure;
  std::vector<double> primal;
  double objective_value = 0.0;
  std::optional<std::vector<double>> farkas;
  std::size_t pivots = 0;
};

struct Options {
  double tol = 1e-9;
  std::size_t max_pivots = 20000;
};

/// Thrown by callers that cannot proceed after a NumericalFailure.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Result solve(const Problem& problem, const Options& options = {});

/// Checks a Farkas certificate against the problem. `tol` bounds the
/// coefficient noise tolerated in the row combination.
bool verify_farkas(const Problem& problem, std::span<const double> y,
                   double tol = 1e-9);

}  // namespace desir::lp

#endif  // DESIR_LP_HPP_
