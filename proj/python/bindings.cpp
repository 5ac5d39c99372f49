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

// Python bindings. Gambles cross the boundary as lists of floats.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "desir/consistency.hpp"
#include "desir/credal.hpp"
#include "desir/decide.hpp"
#include "desir/previsions.hpp"
#include "desir/structure.hpp"

namespace py = pybind11;
using namespace desir;

namespace {

Gamble to_gamble(const std::vector<double>& v) { return Gamble(v); }

std::vector<Gamble> to_gambles(const std::vector<std::vector<double>>& v) {
  std::vector<Gamble> out;
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

std::optional<std::vector<double>> maybe_vec(const std::optional<Gamble>& g) {
  if (!g) return std::nullopt;
  return g->vector();
}

py::dict bracket(const PrevisionBracket& b) {
  py::dict d;
  d["lo"] = b.lo;
  d["hi"] = b.hi;
  d["value"] = b.value();
  d["certified"] = b.certified;
  d["boundary_in"] = to_string(b.boundary_in);
  d["method"] = b.method;
  return d;
}

py::dict decision(const DecisionReport& r) {
  py::dict d;
  d["criterion"] = r.criterion;
  d["available"] = r.available;
  d["optimal"] = r.optimal;
  d["ties_resolved_by_boundary"] = r.ties_resolved_by_boundary;
  py::list rej;
  for (const Rejection& x : r.rejected) {
    py::dict e;
    e["option"] = x.option;
    e["by"] = x.by;
    e["price"] = x.price;
    rej.append(e);
  }
  d["rejected"] = rej;
  return d;
}

ClosureSpec make_spec(const std::string& kind, const py::dict& params) {
  auto get = [&](const char* k, auto fallback) {
    return params.contains(k) ? params[k].cast<decltype(fallback)>() : fallback;
  };
  ClosureSpec s;
  if (kind == "kappa1") {
    s = ClosureSpec::kappa1();
  } else if (kind == "kappa2") {
    s = ClosureSpec::kappa2(get("max_multiplicity", 64));
  } else if (kind == "kappa3") {
    s = ClosureSpec::kappa3();
  } else if (kind == "kappa4") {
    s = ClosureSpec::kappa4();
  } else if (kind == "neg-limit") {
    s = ClosureSpec::neg_limit(get("k", 1));
  } else if (kind == "utility-warp") {
    std::string u = get("utility", std::string("cara"));
    double a = get("a", 1.0);
    s = ClosureSpec::utility_warp(u == "linear"      ? UtilityFn::linear(a)
                                  : u == "odd-power" ? UtilityFn::odd_power(a)
                                                     : UtilityFn::cara(a));
  } else if (kind == "prevision-induced") {
    std::string f = get("functional", std::string("owa"));
    auto w = get("weights", std::vector<double>{});
    s = ClosureSpec::prevision_induced(f == "linear" ? PriceFunctional::linear(w)
                                                     : PriceFunctional::owa(w));
  } else {
    throw py::value_error("unknown operator kind '" + kind + "'");
  }
  s.validate();
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sets of desirable gambles under nonlinear closure operators";

  py::class_<ClosureSpec>(m, "ClosureSpec")
      .def(py::init(&make_spec), py::arg("kind"), py::arg("params") = py::dict())
      .def_property_readonly("name", &ClosureSpec::name)
      .def("__repr__", [](const ClosureSpec& s) { return "ClosureSpec(" + s.name() + ")"; });

  py::class_<DesirSet>(m, "DesirSet")
      .def_static(
          "generated",
          [](std::size_t dim, const std::vector<std::vector<double>>& gens, const ClosureSpec& s) {
            return DesirSet::generated(dim, to_gambles(gens), s);
          },
          py::arg("dim"), py::arg("generators"), py::arg("spec"))
      .def_static(
          "catalog",
          [](const std::string& name) { return DesirSet::catalog(catalog_from_string(name)); },
          py::arg("name"))
      .def_property_readonly("dim", &DesirSet::dim)
      .def("describe", &DesirSet::describe)
      .def(
          "member",
          [](const DesirSet& d, const std::vector<double>& f) {
            return std::string(to_string(d.member(to_gamble(f)).verdict));
          },
          py::arg("f"))
      .def("__repr__", &DesirSet::describe);

  m.def(
      "lower_prevision",
      [](const DesirSet& d, const std::vector<double>& f, double tol) {
        PrevisionOptions o;
        o.tol = tol;
        return bracket(lower_prevision(d, to_gamble(f), o));
      },
      py::arg("d"), py::arg("f"), py::arg("tol") = 1e-9);
  m.def(
      "upper_prevision",
      [](const DesirSet& d, const std::vector<double>& f, double tol) {
        PrevisionOptions o;
        o.tol = tol;
        return bracket(upper_prevision(d, to_gamble(f), o));
      },
      py::arg("d"), py::arg("f"), py::arg("tol") = 1e-9);

  auto loss = [](const LossVerdict& v) {
    return py::make_tuple(to_string(v.value), maybe_vec(v.witness));
  };
  m.def("avoids_partial_loss", [loss](const DesirSet& d) { return loss(avoids_partial_loss(d)); });
  m.def("avoids_sure_loss", [loss](const DesirSet& d) { return loss(avoids_sure_loss(d)); });
  m.def("classify", [](const std::vector<double>& f) { return std::string(to_string(classify(to_gamble(f)))); });

  m.def("credal_vertices", [](const DesirSet& d) {
    std::vector<std::vector<double>> out;
    for (const LinearPrevision& p : vertices(credal_intersection(d))) out.push_back(p.p);
    return out;
  });
  m.def("credal_is_empty", [](const DesirSet& d) { return is_empty(credal_intersection(d)).empty; });

  m.def(
      "decide",
      [](const DesirSet& d, const std::vector<std::vector<double>>& options,
         const std::string& criterion) {
        std::vector<Gamble> opts = to_gambles(options);
        if (criterion == "gamma-maximin") return decision(gamma_maximin(d, opts));
        if (criterion == "gamma-maximax") return decision(gamma_maximax(d, opts));
        if (criterion == "interval-dominance") return decision(interval_dominance(d, opts));
        bool k1 = d.is_generated() && d.spec()->kind == OperatorKind::Kappa1;
        if (criterion == "maximality") {
          return decision(k1 ? maximality_kappa1(d.generators(), opts)
                             : generic_maximality(d, opts, std::nullopt));
        }
        if (criterion == "e-admissibility") {
          return decision(k1 ? e_admissible_kappa1(d.generators(), opts)
                             : generic_e_admissibility(d, opts, std::nullopt));
        }
        throw py::value_error("unknown criterion '" + criterion + "'");
      },
      py::arg("d"), py::arg("options"), py::arg("criterion") = "gamma-maximin");

  m.def("allais_demo", [] {
    AllaisReport r = allais_demo();
    py::dict d;
    d["previsions"] = r.previsions;
    d["prefers_f1"] = r.prefers_f1;
    d["prefers_f4"] = r.prefers_f4;
    d["sum"] = r.sum.vector();
    d["sum_class"] = to_string(r.sum_class);
    d["additive_closure"] = to_string(r.additive_closure.value);
    return d;
  });
}
