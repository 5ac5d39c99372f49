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

// Possibility spaces, gambles, events and partitions.
//
// Every other part of the library works on a finite possibility space whose
// outcomes are indexed 0..n-1. A gamble is a real vector over those indices;
// an event is a boolean mask; a partition is a list of disjoint nonempty
// events covering the space.

#ifndef DESIR_GAMBLE_HPP_
#define DESIR_GAMBLE_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace desir {

/// Thrown when two objects that must live on the same space do not.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PossibilitySpace {
 public:
  explicit PossibilitySpace(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  // Throws std::out_of_range for an unknown label.
  std::size_t index_of(const std::string& label) const;

 private:
  std::vector<std::string> labels_;
};

class Gamble {
 public:
  Gamble() = default;
  explicit Gamble(std::vector<double> values);
  Gamble(std::initializer_list<double> values);

  static Gamble constant(std::size_t n, double c);
  static Gamble zero(std::size_t n) { return constant(n, 0.0); }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& vector() const { return values_; }

  double min() const;
  double max() const;
  // Middle order statistic; the mean of the two middle values for even n.
  double median() const;
  bool is_zero() const;

  Gamble operator+(const Gamble& o) const;
  Gamble operator-(const Gamble& o) const;
  Gamble operator-() const;
  Gamble operator+(double c) const;
  Gamble operator-(double c) const;
  Gamble operator*(double c) const;

  bool operator==(const Gamble& o) const = default;

  std::string to_string() const;

 private:
  std::vector<double> values_;
};

inline Gamble operator*(double c, const Gamble& f) { return f * c; }
inline Gamble operator+(double c, const Gamble& f) { return f + c; }
inline Gamble operator-(double c, const Gamble& f) { return (-f) + c; }

class Event {
 public:
  explicit Event(std::vector<bool> membership);

  static Event full(std::size_t n);
  static Event of(std::size_t n, std::initializer_list<std::size_t> indices);
  static Event of(std::size_t n, std::span<const std::size_t> indices);

  std::size_t size() const { return membership_.size(); }
  bool contains(std::size_t i) const { return membership_[i]; }
  bool empty() const;
  std::size_t count() const;
  Event complement() const;
  Gamble indicator() const;
  std::vector<std::size_t> indices() const;

  bool operator==(const Event& o) const = default;

 private:
  std::vector<bool> membership_;
};

class Partition {
 public:
  // Throws std::invalid_argument unless blocks are nonempty, pairwise
  // disjoint and cover the space.
  explicit Partition(std::vector<Event> blocks);

  static Partition trivial(std::size_t n);

  std::size_t space_size() const { return blocks_.front().size(); }
  const std::vector<Event>& blocks() const { return blocks_; }

 private:
  std::vector<Event> blocks_;
};

enum class GambleClass { Positive, NegativeOrZero, StrictlyNegative, Other };

const char* to_string(GambleClass c);

// StrictlyNegative gambles are also nonpositive.
inline bool is_nonpositive(GambleClass c) {
  return c == GambleClass::NegativeOrZero || c == GambleClass::StrictlyNegative;
}

void require_same_size(const Gamble& f, std::size_t n, const char* what);

/// f ⪈ g: f >= g pointwise with at least one strict coordinate. Exact.
bool gneq(const Gamble& f, const Gamble& g);

/// f >= g pointwise. Exact.
bool dominates(const Gamble& f, const Gamble& g);

GambleClass classify(const Gamble& f);

inline bool is_positive(const Gamble& f) {
  return classify(f) == GambleClass::Positive;
}

/// The conditional gamble Bf: f on B, zero elsewhere. B must be nonempty.
Gamble cutoff(const Gamble& f, const Event& b);

/// True iff f is constant on every block of the partition.
bool is_measurable(const Gamble& f, const Partition& partition);

}  // namespace desir

#endif  // DESIR_GAMBLE_HPP_
