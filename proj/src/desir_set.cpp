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

#include "desir/desir_set.hpp"

#include <cmath>
#include <stdexcept>

namespace desir {

const char* to_string(CatalogId id) {
  switch (id) {
    case CatalogId::MedianStrict: return "median-strict";
    case CatalogId::MedianWeak: return "median-weak";
    case CatalogId::PreciseBinary: return "precise-binary";
    case CatalogId::KappaDiffD1: return "kappa-diff-d1";
    case CatalogId::KappaDiffD2: return "kappa-diff-d2";
    case CatalogId::CongNatEx: return "congnatex";
    case CatalogId::GbrD3: return "gbr-d3";
  }
  return "?";
}

const std::vector<CatalogId>& all_catalog_ids() {
  static const std::vector<CatalogId> ids{
      CatalogId::MedianStrict, CatalogId::MedianWeak,  CatalogId::PreciseBinary,
      CatalogId::KappaDiffD1,  CatalogId::KappaDiffD2, CatalogId::CongNatEx,
      CatalogId::GbrD3};
  return ids;
}

CatalogId catalog_from_string(const std::string& name) {
  for (CatalogId id : all_catalog_ids()) {
    if (name == to_string(id)) return id;
  }
  throw std::invalid_argument("unknown catalog set '" + name + "'");
}

namespace {

std::size_t fixed_dim(CatalogId id) {
  switch (id) {
    case CatalogId::MedianStrict:
    case CatalogId::MedianWeak: return 0;
    case CatalogId::PreciseBinary:
    case CatalogId::KappaDiffD1:
    case CatalogId::KappaDiffD2: return 2;
    case CatalogId::CongNatEx: return 4;
    case CatalogId::GbrD3: return 3;
  }
  return 0;
}

ClosureSpec native_spec(CatalogId id) {
  return id == CatalogId::CongNatEx ? ClosureSpec::neg_limit(1) : ClosureSpec::kappa4();
}

}  // namespace

bool catalog_member(CatalogId id, const Gamble& f) {
  std::size_t want = fixed_dim(id);
  if (want != 0) {
    require_same_size(f, want, to_string(id));
  } else if (f.size() % 2 == 0) {
    throw DimensionError(std::string(to_string(id)) + " needs an odd-sized space");
  }
  const bool pos = is_positive(f);
  switch (id) {
    case CatalogId::MedianStrict: return pos || f.median() > 0.0;
    case CatalogId::MedianWeak:
      return f.median() >= 0.0 && !is_nonpositive(classify(f));
    case CatalogId::PreciseBinary:
      return pos || (f[0] < 0.0 && f[1] > 1.0) || (f[0] > 0.0 && f[1] > -1.0);
    case CatalogId::KappaDiffD1:
      return pos || std::ceil(std::max(1.0, -f[0])) <= f[1];
    case CatalogId::KappaDiffD2: return f[0] + f[1] >= 0.0 && !f.is_zero();
    case CatalogId::CongNatEx:
      return pos || (f[1] > 0.0 && f[2] >= 0.0 && f[3] >= 0.0) ||
             (f[3] > 0.0 && f[0] >= 0.0 && f[1] >= 0.0);
    case CatalogId::GbrD3:
      return pos || dominates(f, Gamble{0.5, -1.5, 0.0}) ||
             dominates(f, Gamble{0.9, -0.1, -0.1}) ||
             (f[0] > 0.25 && f[1] >= -0.75 && f[2] > 0.0);
  }
  return false;
}

DesirSet DesirSet::generated(std::size_t dim, std::vector<Gamble> gens,
                             ClosureSpec spec) {
  if (dim < 2) throw DimensionError("desirable sets need at least 2 outcomes");
  spec.validate();
  for (const Gamble& g : gens) require_same_size(g, dim, "generator");
  if (spec.kind == OperatorKind::PrevisionInduced) {
    if (spec.functional->dim() != dim) {
      throw DimensionError("price functional size does not match the space");
    }
  }
  DesirSet d;
  d.form_ = Form::Generated;
  d.dim_ = dim;
  d.gens_ = std::move(gens);
  d.spec_ = std::move(spec);
  return d;
}

DesirSet DesirSet::catalog(CatalogId id, std::size_t dim) {
  std::size_t want = fixed_dim(id);
  if (want == 0) {
    if (dim == 0) dim = 3;
    if (dim % 2 == 0 || dim < 3) {
      throw DimensionError(std::string(to_string(id)) + " needs an odd-sized space");
    }
  } else if (dim == 0) {
    dim = want;
  } else if (dim != want) {
    throw DimensionError(std::string(to_string(id)) + " lives on " +
                         std::to_string(want) + " outcomes");
  }
  DesirSet d;
  d.form_ = Form::Catalog;
  d.dim_ = dim;
  d.catalog_ = id;
  d.spec_ = native_spec(id);
  return d;
}

DesirSet DesirSet::closure(std::size_t dim, std::string name, MemberFn fn,
                           std::optional<ClosureSpec> spec) {
  if (dim < 2) throw DimensionError("desirable sets need at least 2 outcomes");
  DesirSet d;
  d.form_ = Form::Closure;
  d.dim_ = dim;
  d.name_ = std::move(name);
  d.fn_ = std::make_shared<const MemberFn>(std::move(fn));
  d.spec_ = std::move(spec);
  return d;
}

const std::vector<Gamble>& DesirSet::generators() const {
  if (form_ != Form::Generated) {
    throw std::logic_error("generators() on a non-generated set");
  }
  return gens_;
}

std::string DesirSet::describe() const {
  switch (form_) {
    case Form::Generated: {
      std::string out = spec_->name() + "{";
      for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (i) out += ", ";
        out += gens_[i].to_string();
      }
      return out + "}";
    }
    case Form::Catalog: return std::string("catalog:") + to_string(*catalog_);
    case Form::Closure: return name_;
  }
  return "?";
}

Membership DesirSet::member(const Gamble& f) const {
  require_same_size(f, dim_, "membership query");
  switch (form_) {
    case Form::Generated: return member_generated(gens_, *spec_, f);
    case Form::Catalog:
      return from_bool(catalog_member(*catalog_, f), "closed-form", "closed-form");
    case Form::Closure: return (*fn_)(f);
  }
  throw std::logic_error("unhandled desirable-set form");
}

DesirSet DesirSet::with_generators(const std::vector<Gamble>& extra) const {
  std::vector<Gamble> all = generators();
  all.insert(all.end(), extra.begin(), extra.end());
  return generated(dim_, std::move(all), *spec_);
}

}  // namespace desir
