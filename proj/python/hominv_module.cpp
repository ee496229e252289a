// Copyright 2026 The hominv Authors
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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hominv/errors.hpp"
#include "hominv/hom_simulator.hpp"
#include "hominv/identities.hpp"
#include "hominv/invariants.hpp"
#include "hominv/nonlocality.hpp"
#include "hominv/w_observable.hpp"

namespace py = pybind11;
using namespace hominv;

namespace {

StateCoeffs coeffs_of(const Matrix4c& rho) { return coeffs_from_density(DensityMatrix(rho)); }

py::dict spectrum_dict(const RSpectrum& s) {
  py::dict d;
  d["r"] = s.r;
  d["method"] = std::string(to_string(s.method));
  d["projected"] = s.projected;
  return d;
}

py::object witness(const EntropicWitness& w) {
  return w.value ? py::cast(*w.value) : py::none();
}

CountTable table_from(const py::dict& d) {
  CountTable t;
  t.config = d["config"].cast<std::string>();
  t.seed = d.contains("seed") ? d["seed"].cast<std::uint64_t>() : 0;
  t.counts = d["counts"].cast<std::vector<std::uint64_t>>();
  t.total = 0;
  for (auto c : t.counts) t.total += c;
  return t;
}

}  // namespace

PYBIND11_MODULE(_hominv, m) {
  m.doc() = "Two-qubit polynomial invariants, HOM interferometer simulation and CHSH nonlocality";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);
  py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
  py::register_exception<UnresolvedTermError>(m, "UnresolvedTermError", PyExc_LookupError);
  py::register_exception<InsufficientStatisticsError>(m, "InsufficientStatisticsError", PyExc_RuntimeError);
  py::register_exception<UnphysicalTripleError>(m, "UnphysicalTripleError", PyExc_ArithmeticError);
  py::register_exception<CatalogError>(m, "CatalogError", PyExc_RuntimeError);

  // States are plain 4x4 complex arrays; every entry point validates them.
  m.def("singlet_state", [] { return singlet_state().entries(); });
  m.def("maximally_mixed_state", [] { return maximally_mixed_state().entries(); });
  m.def("werner_state", [](double p) { return werner_state(p).entries(); }, py::arg("p"));
  m.def(
      "random_state",
      [](std::uint64_t seed, const std::string& kind) {
        if (kind == "pure") return random_state(seed, ensemble::PureHaar{}).entries();
        if (kind == "mixed") return random_state(seed, ensemble::MixedGinibre{}).entries();
        throw ValidationError("kind must be 'pure' or 'mixed'");
      },
      py::arg("seed"), py::arg("kind") = "mixed");
  m.def("apply_local_unitary",
        [](const Matrix4c& rho, std::uint64_t seed) {
          return apply_local_unitary(DensityMatrix(rho), LocalUnitary::random(seed)).entries();
        },
        py::arg("rho"), py::arg("seed"));
  m.def("coeffs", [](const Matrix4c& rho) { return coeffs_of(rho).table(); }, py::arg("rho"));

  m.def("makhlin_invariants", [](const Matrix4c& rho) { return makhlin_invariants(coeffs_of(rho)).values(); },
        py::arg("rho"));
  m.def("jing_invariants", [](const Matrix4c& rho) { return jing_invariants(coeffs_of(rho)).values(); },
        py::arg("rho"));

  m.def(
      "diagram_values",
      [](const Matrix4c& rho) {
        std::map<std::string, double> out;
        for (const auto& [l, v] : DiagramCatalog::builtin().evaluate(coeffs_of(rho)).entries())
          out[std::string(to_string(l))] = v;
        return out;
      },
      py::arg("rho"));
  m.def(
      "identity_residuals",
      [](const Matrix4c& rho) {
        const StateCoeffs t = coeffs_of(rho);
        std::map<std::string, double> out;
        for (const auto& row : identity_report(t, DiagramCatalog::builtin().evaluate(t)).rows)
          out[row.name] = row.residual;
        return out;
      },
      py::arg("rho"));

  m.def("interferometer_configs", [] {
    std::vector<std::string> names;
    for (const auto& c : interferometer_configs()) names.push_back(c.name);
    return names;
  });
  m.def(
      "simulate",
      [](const std::string& config, const Matrix4c& rho, std::uint64_t events, std::uint64_t seed) {
        const CountTable t = [&] {
          py::gil_scoped_release release;
          return sample_events(interferometer_config(config), coeffs_of(rho), events, seed);
        }();
        py::dict d;
        d["config"] = t.config;
        d["seed"] = t.seed;
        d["total"] = t.total;
        d["counts"] = t.counts;
        d["detector_pairs"] = interferometer_config(config).detector_pairs;
        return d;
      },
      py::arg("config"), py::arg("rho"), py::arg("events"), py::arg("seed") = 1,
      "Counts indexed by a bit mask: bit i set when detector pair i anticoalesced.");

  m.def(
      "nonlocality",
      [](const Matrix4c& rho, const std::string& method) {
        SpectrumMethod sm;
        if (method == "direct") sm = SpectrumMethod::Direct;
        else if (method == "jing") sm = SpectrumMethod::FromJing;
        else if (method == "makhlin") sm = SpectrumMethod::FromMakhlin;
        else throw ValidationError("method must be direct, jing or makhlin");
        const NonlocalityReport rep = nonlocality_from_state(coeffs_of(rho), sm);
        py::dict d = spectrum_dict(rep.spectrum);
        d["M"] = rep.M;
        d["f"] = rep.f;
        d["E"] = witness(rep.E);
        return d;
      },
      py::arg("rho"), py::arg("method") = "direct");
  m.def(
      "spectrum_from_invariants",
      [](const std::string& family, std::array<double, 3> triple, bool strict) {
        const RSpectrum s = spectrum_from_invariants({family_from_string(family), triple},
                                                     strict ? RootPolicy::Strict : RootPolicy::Project);
        return spectrum_dict(s);
      },
      py::arg("family"), py::arg("triple"), py::arg("strict") = true);
  m.def(
      "estimate_nonlocality",
      [](const std::vector<py::dict>& tables, const std::string& path) {
        std::vector<CountTable> ts;
        for (const auto& d : tables) ts.push_back(table_from(d));
        const EstimationPath p = path == "jing"      ? EstimationPath::Jing
                                 : path == "makhlin" ? EstimationPath::Makhlin
                                                     : throw ValidationError("path must be jing or makhlin");
        const NonlocalityEstimate est = [&] {
          py::gil_scoped_release release;
          return estimate_nonlocality(ts, p);
        }();
        py::dict d = spectrum_dict(est.spectrum);
        d["structure"] = std::string(to_string(est.structure));
        d["split_bound"] = est.split_bound;
        d["triple"] = est.triple.values;
        d["triple_se"] = est.triple_se;
        d["r_se"] = est.r_se;
        d["M"] = est.M;
        d["M_se"] = est.M_se;
        d["f"] = est.f;
        d["f_se"] = est.f_se;
        d["E"] = witness(est.E);
        d["E_se"] = est.E_se;
        return d;
      },
      py::arg("tables"), py::arg("path") = "jing");
  m.def(
      "required_configs",
      [](const std::string& path) {
        return required_configs(path == "makhlin" ? EstimationPath::Makhlin : EstimationPath::Jing);
      },
      py::arg("path"));

  m.def("w_observable", [](const Eigen::MatrixXcd& rho3) { return w_observable_direct(rho3); }, py::arg("rho3"));
  m.def(
      "w_via_circuit",
      [](const Eigen::MatrixXcd& rho3, std::uint64_t events, std::uint64_t seed) {
        const WCircuitEstimate e = w_via_circuit(rho3, events, seed);
        return py::make_tuple(e.value, e.std_error);
      },
      py::arg("rho3"), py::arg("events"), py::arg("seed") = 1);

  m.def("resource_table_csv", &resource_table_csv);
}
