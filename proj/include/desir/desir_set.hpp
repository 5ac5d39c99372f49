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

// Sets of desirable gambles.
//
// A DesirSet comes in three forms:
//   generated  natural extension κ(G ∪ L+) of a finite generator list
//   catalog    a named set with a closed-form membership predicate
//   closure    an arbitrary membership function (assembled conditional
//              sets, marginal extensions)

#ifndef DESIR_DESIR_SET_HPP_
#define DESIR_DESIR_SET_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "desir/gamble.hpp"
#include "desir/operators.hpp"

namespace desir {

enum class CatalogId {
  // L+ ∪ {f : median f > 0}; odd-sized spaces.
  MedianStrict,
  // {f : median f >= 0} minus the nonpositive gambles; odd-sized spaces.
  MedianWeak,
  // Binary: L+ ∪ {f1 < 0, f2 > 1} ∪ {f1 > 0, f2 > -1}.
  PreciseBinary,
  // Binary: L+ ∪ {f >= (-n, n) for some integer n >= 1}.
  KappaDiffD1,
  // Binary: {f >= (λ, -λ) for some λ ≠ 0}.
  KappaDiffD2,
  // Four outcomes, blocks {ω1,ω2}, {ω3,ω4}: dominance closure of the two
  // conditional sets {f2 > 0, f3 = f4 = 0}, {f4 > 0, f1 = f2 = 0} and L+.
  CongNatEx,
  // Ternary: dominance closure of (0.5,-1.5,0), (0.9,-0.1,-0.1) and
  // (0.25+δ,-0.75,δ) for every δ > 0.
  GbrD3,
};

const char* to_string(CatalogId id);
// Throws std::invalid_argument for unknown names.
CatalogId catalog_from_string(const std::string& name);
const std::vector<CatalogId>& all_catalog_ids();

class DesirSet {
 public:
  using MemberFn = std::function<Membership(const Gamble&)>;

  // gens may be empty (the vacuous set L+ under any κ).
  static DesirSet generated(std::size_t dim, std::vector<Gamble> gens,
                            ClosureSpec spec);
  // dim = 0 picks the catalog's fixed size (3 for the median sets).
  static DesirSet catalog(CatalogId id, std::size_t dim = 0);
  static DesirSet closure(std::size_t dim, std::string name, MemberFn fn,
                          std::optional<ClosureSpec> spec = std::nullopt);

  std::size_t dim() const { return dim_; }
  bool is_generated() const { return form_ == Form::Generated; }
  bool is_catalog() const { return form_ == Form::Catalog; }
  bool is_closure() const { return form_ == Form::Closure; }

  // Generated sets only (throws std::logic_error otherwise).
  const std::vector<Gamble>& generators() const;
  // The operator the set is closed under: the generating spec, the
  // catalog's native operator, or the one given to closure(). Empty for
  // closures created without one.
  const std::optional<ClosureSpec>& spec() const { return spec_; }
  std::optional<CatalogId> catalog_id() const { return catalog_; }
  std::string describe() const;

  Membership member(const Gamble& f) const;

  // A generated set with extra generators under the same spec.
  DesirSet with_generators(const std::vector<Gamble>& extra) const;

 private:
  enum class Form { Generated, Catalog, Closure };
  DesirSet() = default;

  Form form_ = Form::Generated;
  std::size_t dim_ = 0;
  std::vector<Gamble> gens_;
  std::optional<ClosureSpec> spec_;
  std::optional<CatalogId> catalog_;
  std::string name_;
  std::shared_ptr<const MemberFn> fn_;
};

inline Membership member(const DesirSet& d, const Gamble& f) { return d.member(f); }

// Closed-form catalog predicate. Throws DimensionError on a size mismatch.
bool catalog_member(CatalogId id, const Gamble& f);

}  // namespace desir

#endif  // DESIR_DESIR_SET_HPP_
