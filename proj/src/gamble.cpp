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

#include "desir/gamble.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace desir {

PossibilitySpace::PossibilitySpace(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.size() < 2) {
    throw std::invalid_argument("possibility space needs at least 2 outcomes");
  }
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) {
    throw std::invalid_argument("outcome labels must be unique");
  }
}

std::size_t PossibilitySpace::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw std::out_of_range("unknown outcome label '" + label + "'");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

Gamble::Gamble(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("gamble entries must be finite");
    }
  }
}

Gamble::Gamble(std::initializer_list<double> values)
    : Gamble(std::vector<double>(values)) {}

Gamble Gamble::constant(std::size_t n, double c) {
  return Gamble(std::vector<double>(n, c));
}

double Gamble::min() const {
  return *std::min_element(values_.begin(), values_.end());
}

double Gamble::max() const {
  return *std::max_element(values_.begin(), values_.end());
}

double Gamble::median() const {
  std::vector<double> sorted = values_;
  std::sort(sorted.begin(), sorted.end());
  std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

bool Gamble::is_zero() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v == 0.0; });
}

Gamble Gamble::operator+(const Gamble& o) const {
  require_same_size(o, size(), "gamble sum");
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = values_[i] + o.values_[i];
  return Gamble(std::move(out));
}

Gamble Gamble::operator-(const Gamble& o) const {
  require_same_size(o, size(), "gamble difference");
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = values_[i] - o.values_[i];
  return Gamble(std::move(out));
}

Gamble Gamble::operator-() const { return *this * -1.0; }

Gamble Gamble::operator+(double c) const {
  std::vector<double> out(values_);
  for (double& v : out) v += c;
  return Gamble(std::move(out));
}

Gamble Gamble::operator-(double c) const { return *this + (-c); }

Gamble Gamble::operator*(double c) const {
  std::vector<double> out(values_);
  for (double& v : out) v *= c;
  return Gamble(std::move(out));
}

std::string Gamble::to_string() const {
  std::ostringstream os;
  os.precision(12);
  os << '(';
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) os << ", ";
    os << values_[i];
  }
  os << ')';
  return os.str();
}

Event::Event(std::vector<bool> membership) : membership_(std::move(membership)) {}

Event Event::full(std::size_t n) { return Event(std::vector<bool>(n, true)); }

Event Event::of(std::size_t n, std::initializer_list<std::size_t> indices) {
  return of(n, std::span<const std::size_t>(indices.begin(), indices.size()));
}

Event Event::of(std::size_t n, std::span<const std::size_t> indices) {
  std::vector<bool> m(n, false);
  for (std::size_t i : indices) {
    if (i >= n) throw std::out_of_range("event index outside the space");
    m[i] = true;
  }
  return Event(std::move(m));
}

bool Event::empty() const { return count() == 0; }

std::size_t Event::count() const {
  return static_cast<std::size_t>(
      std::count(membership_.begin(), membership_.end(), true));
}

Event Event::complement() const {
  std::vector<bool> m(membership_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = !membership_[i];
  return Event(std::move(m));
}

Gamble Event::indicator() const {
  std::vector<double> v(membership_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = membership_[i] ? 1.0 : 0.0;
  return Gamble(std::move(v));
}

std::vector<std::size_t> Event::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < membership_.size(); ++i) {
    if (membership_[i]) out.push_back(i);
  }
  return out;
}

Partition::Partition(std::vector<Event> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("partition has no blocks");
  std::size_t n = blocks_.front().size();
  std::vector<int> hits(n, 0);
  for (const Event& b : blocks_) {
    if (b.size() != n) throw DimensionError("partition blocks differ in size");
    if (b.empty()) throw std::invalid_argument("partition block is empty");
    for (std::size_t i = 0; i < n; ++i) hits[i] += b.contains(i) ? 1 : 0;
  }
  for (int h : hits) {
    if (h != 1) {
      throw std::invalid_argument(
          "partition blocks must be disjoint and cover the space");
    }
  }
}

Partition Partition::trivial(std::size_t n) {
  return Partition({Event::full(n)});
}

const char* to_string(GambleClass c) {
  switch (c) {
    case GambleClass::Positive: return "Positive";
    case GambleClass::NegativeOrZero: return "NegativeOrZero";
    case GambleClass::StrictlyNegative: return "StrictlyNegative";
    case GambleClass::Other: return "Other";
  }
  return "?";
}

void require_same_size(const Gamble& f, std::size_t n, const char* what) {
  if (f.size() != n) {
    throw DimensionError(std::string(what) + ": expected dimension " +
                         std::to_string(n) + ", got " +
                         std::to_string(f.size()));
  }
}

bool dominates(const Gamble& f, const Gamble& g) {
  require_same_size(g, f.size(), "dominance");
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] < g[i]) return false;
  }
  return true;
}

bool gneq(const Gamble& f, const Gamble& g) {
  require_same_size(g, f.size(), "gneq");
  bool strict = false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] < g[i]) return false;
    if (f[i] > g[i]) strict = true;
  }
  return strict;
}

GambleClass classify(const Gamble& f) {
  bool any_pos = false;
  bool any_neg = false;
  for (double v : f.values()) {
    any_pos |= v > 0.0;
    any_neg |= v < 0.0;
  }
  if (any_pos && !any_neg) return GambleClass::Positive;
  if (!any_pos) {
    return f.max() < 0.0 ? GambleClass::StrictlyNegative
                         : GambleClass::NegativeOrZero;
  }
  return GambleClass::Other;
}

Gamble cutoff(const Gamble& f, const Event& b) {
  if (b.size() != f.size()) throw DimensionError("cutoff: event size mismatch");
  if (b.empty()) throw std::invalid_argument("cutoff: conditioning event is empty");
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = b.contains(i) ? f[i] : 0.0;
  return Gamble(std::move(v));
}

bool is_measurable(const Gamble& f, const Partition& partition) {
  if (partition.space_size() != f.size()) {
    throw DimensionError("is_measurable: partition size mismatch");
  }
  for (const Event& b : partition.blocks()) {
    auto idx = b.indices();
    for (std::size_t i : idx) {
      if (f[i] != f[idx.front()]) return false;
    }
  }
  return true;
}

}  // namespace desir
