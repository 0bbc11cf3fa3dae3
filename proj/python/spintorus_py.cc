// Copyright 2026 The spin-torus Authors
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
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <vector>

#include "spintorus/entanglement.h"
#include "spintorus/error.h"
#include "spintorus/hamiltonian.h"
#include "spintorus/manifold.h"
#include "spintorus/qstate.h"
#include "spintorus/scenario.h"
#include "spintorus/verify.h"

namespace py = pybind11;
using namespace spintorus;

namespace {

std::vector<std::vector<Amp>> to_rows(const Operator4 &op) {
    std::vector<std::vector<Amp>> rows(4, std::vector<Amp>(4));
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            rows[r][c] = op(r, c);
        }
    }
    return rows;
}

py::dict metric_dict(const MetricTensor2 &m) {
    py::dict d;
    d["g_tt"] = m.g_tt;
    d["g_tp"] = m.g_tp;
    d["g_pp"] = m.g_pp;
    d["k"] = m.k;
    d["g_tt_diag"] = m.g_tt_diag;
    d["g_pp_diag"] = m.g_pp_diag;
    d["degenerate_shear"] = m.degenerate_shear;
    return d;
}

ProductKind kind_from_name(const std::string &name) {
    for (auto kind : {ProductKind::kPlusMinus, ProductKind::kPlusPlus, ProductKind::kMinusMinus, ProductKind::kUpDown}) {
        if (name == product_kind_name(kind)) {
            return kind;
        }
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown product kind '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two-spin Heisenberg evolution: torus geometry and concurrence";

    static py::exception<Error> error_type(m, "SpinTorusError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error &e) {
            py::set_error(error_type, e.what());
        }
    });

    py::class_<PureState2Q>(m, "PureState2Q")
        .def(py::init([](const std::array<Amp, 4> &amps, bool normalize) {
                 return normalize ? PureState2Q::normalize(amps) : PureState2Q::from_normalized(amps);
             }),
             py::arg("amplitudes"), py::arg("normalize") = false)
        .def_static("basis", &PureState2Q::basis)
        .def_property_readonly("amplitudes", [](const PureState2Q &s) { return s.amplitudes(); })
        .def("norm_sq", &PureState2Q::norm_sq)
        .def("__neg__", [](const PureState2Q &s) { return -s; })
        .def("with_phase", &PureState2Q::with_phase)
        .def("__repr__", [](const PureState2Q &s) {
            return "PureState2Q(" + py::repr(py::cast(s.amplitudes())).cast<std::string>() + ")";
        });

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init([](double J, double h_z, double gamma) {
                 SystemParams p{J, h_z, gamma};
                 p.validate();
                 return p;
             }),
             py::arg("J"), py::arg("h_z"), py::arg("gamma") = 1.0)
        .def_readonly("J", &SystemParams::J)
        .def_readonly("h_z", &SystemParams::h_z)
        .def_readonly("gamma", &SystemParams::gamma);

    m.def("product_state", [](const std::string &kind, double chi, double gamma_az) {
        return named_product_state(kind_from_name(kind), chi, gamma_az);
    }, py::arg("kind"), py::arg("chi") = 0.0, py::arg("gamma_az") = 0.0);

    m.def("inner", py::overload_cast<const PureState2Q &, const PureState2Q &>(&inner));
    m.def("fs_distance_sq", &fs_distance_sq, py::arg("x"), py::arg("y"), py::arg("gamma") = 1.0);
    m.def("ray_equal", &ray_equal, py::arg("x"), py::arg("y"), py::arg("tol") = 1e-12);

    m.def("eigenvalues", [](const SystemParams &p) {
        std::vector<double> out;
        for (const auto &pair : eigensystem(p).pairs) {
            out.push_back(pair.value);
        }
        return out;
    });
    m.def("hamiltonian", [](const SystemParams &p) { return to_rows(build_hamiltonian(p)); });
    m.def("propagator_analytic", [](const SystemParams &p, double t) { return to_rows(propagator_analytic(p, t)); });
    m.def("propagator_spectral", [](const SystemParams &p, double t) { return to_rows(propagator_spectral(p, t)); });

    m.def("evolve_family", [](const PureState2Q &s, double theta, double phi) {
        return evolve_family(s, {theta, phi});
    });
    m.def("params_to_point", [](const SystemParams &p, double t) {
        const TorusPoint pt = params_to_point(p, t);
        return py::make_tuple(pt.theta, pt.phi);
    });
    m.def("family_invariants", [](const PureState2Q &s) {
        const FamilyInvariants inv = family_invariants(s);
        py::dict d;
        d["A"] = inv.A;
        d["B"] = inv.B;
        d["D"] = inv.D;
        return d;
    });
    m.def("metric_analytic", [](const PureState2Q &s, double gamma) { return metric_dict(metric_analytic(s, gamma)); },
          py::arg("initial"), py::arg("gamma") = 1.0);
    m.def("metric_numeric", [](const PureState2Q &s, double theta, double phi, double gamma, double h) {
        return metric_dict(metric_numeric(s, {theta, phi}, gamma, h));
    }, py::arg("initial"), py::arg("theta"), py::arg("phi"), py::arg("gamma") = 1.0, py::arg("h") = kDefaultFdStep);
    m.def("diagonalize_check", [](const PureState2Q &s, double gamma) { return diagonalize_check(s, gamma); },
          py::arg("initial"), py::arg("gamma") = 1.0);
    m.def("classify", [](const PureState2Q &s, double gamma, double tol) {
        const ManifoldReport r = classify(s, gamma, tol);
        py::dict d;
        d["kind"] = std::string(manifold_kind_name(r.kind));
        d["dimension"] = r.dimension;
        d["circle_radius"] = r.circle_radius;
        d["radius_derived"] = r.radius_derived;
        d["radius_candidates"] = py::make_tuple(r.phi_radius, r.theta_radius);
        d["flatness_residual"] = r.flatness_residual;
        return d;
    }, py::arg("initial"), py::arg("gamma") = 1.0, py::arg("tol") = kDegeneracyTolerance);

    m.def("concurrence", &concurrence);
    m.def("concurrence_wootters_oracle", &concurrence_wootters_oracle);
    m.def("concurrence_evolved", &concurrence_evolved);
    m.def("concurrence_disentangled", &concurrence_disentangled);
    m.def("max_entanglement_time", [](const PureState2Q &s, const SystemParams &p) {
        const MaxEntanglement r = max_entanglement_time(s, p);
        return py::make_tuple(r.t, r.theta, r.C_max);
    });

    m.def("_run_scenario_json", [](const std::string &config_json) {
        const ScenarioConfig config = parse_config(OrderedJson::parse(config_json));
        return run_scenario(config).to_json().dump();
    });
    m.def("_verify_all_json", [](std::uint64_t seed, bool corrupt) {
        VerifyOptions options;
        options.corrupt_propagator = corrupt;
        return verify_all(seed, options).to_json().dump();
    }, py::arg("seed") = kDefaultVerifySeed, py::arg("corrupt_propagator") = false);
}
