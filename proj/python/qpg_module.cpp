// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
//
// Thin python surface: JSON-config-in / JSON-report-out for the experiment
// runner, plus direct access to the exact-layer gate matrices.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "qpg/config.hpp"
#include "qpg/errors.hpp"
#include "qpg/logical.hpp"
#include "qpg/numerics.hpp"
#include "qpg/report.hpp"
#include "qpg/runner.hpp"
#include "qpg/version.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_qpgsim, m) {
  m.doc() =
      "Simulation and verification toolkit for hybridly protected holonomic "
      "quantum gates";
  m.attr("__version__") = qpg::kVersion;

  py::register_exception<qpg::ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def(
      "catalog_gates",
      []() {
        std::vector<std::string> names;
        for (qpg::GateKind kind : qpg::catalog_kinds()) {
          names.push_back(qpg::gate_kind_name(kind));
        }
        return names;
      },
      "Names of the supported catalog gates.");

  m.def(
      "logical_matrix",
      [](const std::string& gate) {
        const qpg::CatalogEntry entry =
            qpg::gate_catalog(qpg::gate_kind_from_name(gate));
        return qpg::Operator(
            entry.gate.global_phase *
            qpg::project_catalog(entry, qpg::synthesize(entry.schedule)));
      },
      py::arg("gate"),
      "Logical unitary synthesized from the gate's pulse schedule, including "
      "the global phase.");

  m.def(
      "expected_matrix",
      [](const std::string& gate) {
        return qpg::gate_catalog(qpg::gate_kind_from_name(gate)).expected;
      },
      py::arg("gate"), "Expected logical unitary of a catalog gate.");

  m.def("process_fidelity", &qpg::process_fidelity, py::arg("target"),
        py::arg("actual"),
        "Phase-invariant process fidelity |Tr(U_target^dag U_actual)| / d.");

  m.def(
      "default_config",
      []() { return qpg::config_to_json(qpg::default_config()); },
      "Default experiment configuration as a JSON string.");

  m.def(
      "run_experiment",
      [](const std::string& config_json) {
        const qpg::ExperimentConfig config = qpg::parse_config_json(config_json);
        return qpg::report_to_json(qpg::run_experiment(config));
      },
      py::arg("config_json"), py::call_guard<py::gil_scoped_release>(),
      "Run the experiment named by the config's 'experiment' key "
      "(verify-gates, verify-protection, simulate-qrm or noise-sweep) and "
      "return the verification report as a JSON string.");

  m.def(
      "noise_sweep",
      [](const std::string& config_json) {
        qpg::ExperimentConfig config = qpg::parse_config_json(config_json);
        config.experiment = "noise-sweep";
        const qpg::SweepArtifacts artifacts = qpg::run_noise_sweep(config);
        return std::make_pair(
            qpg::sweep_to_csv(artifacts.sweep),
            qpg::sweep_report_json(artifacts.report, artifacts.sweep));
      },
      py::arg("config_json"), py::call_guard<py::gil_scoped_release>(),
      "Run a noise-magnitude sweep; returns (csv, summary_json).");
}
