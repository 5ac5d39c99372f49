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

// Seeded random gambles for probes and property checks.

#ifndef DESIR_SAMPLING_HPP_
#define DESIR_SAMPLING_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "desir/gamble.hpp"

namespace desir {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  // Uniform on [-range, range]^n. Half the draws are snapped to a 0.25
  // grid so that ties and boundary cases actually occur.
  Gamble gamble(std::size_t n, double range = 3.0);
  // Uniform on [-range, range]^n, never snapped.
  Gamble continuous(std::size_t n, double range = 3.0);
  Gamble nonnegative(std::size_t n, double range = 3.0);
  // A gamble ⪈ 0.
  Gamble positive(std::size_t n, double range = 3.0);
  std::vector<Gamble> gambles(std::size_t count, std::size_t n, double range = 3.0);
  double uniform(double lo, double hi);
  std::size_t index(std::size_t count);
  bool coin(double p = 0.5);

 private:
  std::mt19937_64 rng_;
};

}  // namespace desir

#endif  // DESIR_SAMPLING_HPP_
