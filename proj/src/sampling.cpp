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

#include "desir/sampling.hpp"

#include <cmath>

namespace desir {

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

std::size_t Sampler::index(std::size_t count) {
  return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng_);
}

bool Sampler::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

Gamble Sampler::continuous(std::size_t n, double range) {
  std::vector<double> v(n);
  for (double& x : v) x = uniform(-range, range);
  return Gamble(std::move(v));
}

Gamble Sampler::gamble(std::size_t n, double range) {
  bool snap = coin();
  std::vector<double> v(n);
  for (double& x : v) {
    x = uniform(-range, range);
    if (snap) x = std::round(x * 4.0) / 4.0;
  }
  return Gamble(std::move(v));
}

Gamble Sampler::nonnegative(std::size_t n, double range) {
  std::vector<double> v(n);
  for (double& x : v) x = coin(0.3) ? 0.0 : uniform(0.0, range);
  return Gamble(std::move(v));
}

Gamble Sampler::positive(std::size_t n, double range) {
  for (;;) {
    Gamble g = nonnegative(n, range);
    if (is_positive(g)) return g;
  }
}

std::vector<Gamble> Sampler::gambles(std::size_t count, std::size_t n, double range) {
  std::vector<Gamble> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(gamble(n, range));
  return out;
}

}  // namespace desir
