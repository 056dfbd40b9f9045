// Copyright 2026 The bqcsim Authors
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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>

#include "bqc/harness.h"
#include "bqc/report_io.h"
#include "bqc/shor.h"
#include "bqc/verify.h"

namespace py = pybind11;

namespace {

bqc::RunConfig config_from(const std::map<std::string, std::string> &settings) {
    bqc::RunConfig cfg;
    for (const auto &[k, v] : settings) {
        bqc::apply_setting(cfg, k, v);
    }
    return cfg;
}

std::string run_experiment_json(const std::map<std::string, std::string> &settings) {
    auto cfg = config_from(settings);
    return bqc::report_to_json(bqc::run_experiment(cfg).report).dump();
}

std::string sweep_json(const std::string &parameter, const std::vector<double> &grid,
                       const std::map<std::string, std::string> &settings) {
    auto points = bqc::sweep(bqc::parse_sweep_parameter(parameter), grid, config_from(settings));
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &p : points) {
        arr.push_back({{"value", p.value}, {"report", bqc::report_to_json(p.report)}});
    }
    return arr.dump();
}

py::dict chsh_verdict(int64_t n, int64_t wins) {
    if (wins < 0 || wins > n) {
        throw std::invalid_argument("wins must lie in [0, n]");
    }
    bqc::ChshTally t{n, wins};
    auto v = bqc::chsh_verdict(t);
    py::dict d;
    d["accepted"] = v.accepted();
    d["cause"] = bqc::to_string(v.cause);
    d["epsilon"] = t.epsilon();
    d["required_wins"] = t.required_wins();
    return d;
}

double exact_chsh(double alice_offset, double bob_offset) {
    bqc::StateVector phi({bqc::Qubit::alice(1), bqc::Qubit::bob(1)});
    phi.apply(bqc::Gate::h(bqc::Qubit::alice(1)));
    phi.apply(bqc::Gate::cnot(bqc::Qubit::alice(1), bqc::Qubit::bob(1)));
    double sum = 0;
    for (auto o : {bqc::ChshOrientation::kAliceRotated, bqc::ChshOrientation::kBobRotated}) {
        sum += bqc::chsh_win_probability(phi, bqc::Qubit::alice(1), bqc::Qubit::bob(1), o, alice_offset, bob_offset);
    }
    return sum / 2;
}

std::optional<std::pair<int64_t, int64_t>> factor(int measured_bit) {
    auto f = bqc::shor::postprocess(bqc::shor::PeriodReadout{measured_bit, {0}}, bqc::shor::FactoringInstance{});
    if (!f) return std::nullopt;
    return std::make_pair(f->p, f->q);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two-server blind quantum computing simulator";

    m.def("chsh_threshold", &bqc::chsh_threshold, py::arg("n"));
    m.def("chsh_verdict", &chsh_verdict, py::arg("n"), py::arg("wins"));
    m.def("chsh_win_probability", &exact_chsh, py::arg("alice_offset") = 0.0, py::arg("bob_offset") = 0.0,
          "Exact honest-state win probability for device offsets in Bloch radians.");
    m.def(
        "hofmann_bounds",
        [](double fzz, double fxx) {
            auto b = bqc::hofmann_bounds(fzz, fxx);
            return std::make_pair(b.lower, b.upper);
        },
        py::arg("f_zz"), py::arg("f_xx"));
    m.def(
        "ideal_pass_probability",
        [](const std::string &sub, const std::string &basis, const std::string &alice, const std::string &bob) {
            return bqc::ideal_pass_probability(bqc::parse_subprotocol(sub), bqc::parse_tomo_basis(basis),
                                               bqc::parse_strategy(alice), bqc::parse_strategy(bob));
        },
        py::arg("sub_protocol"), py::arg("basis"), py::arg("alice") = "honest", py::arg("bob") = "honest");
    m.def("classical_order", &bqc::shor::classical_order, py::arg("a"), py::arg("n"));
    m.def("factor", &factor, py::arg("measured_bit"), "Factors of 15 from a readout of the a = 11 circuit, or None.");
    m.def("_run_experiment_json", &run_experiment_json, py::arg("settings"));
    m.def("_sweep_json", &sweep_json, py::arg("parameter"), py::arg("grid"), py::arg("settings"));
}
