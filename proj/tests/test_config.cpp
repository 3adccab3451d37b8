// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "qpg/config.hpp"
#include "qpg/errors.hpp"
#include "qpg/report.hpp"
#include "qpg/runner.hpp"

TEST_CASE("the default config carries the reference parameters") {
  const qpg::ExperimentConfig config = qpg::default_config();
  const double two_pi = 2.0 * 3.14159265358979323846;
  CHECK(config.qrm.omega_c == doctest::Approx(two_pi * 7.0e9));
  CHECK(config.qrm.omega_q_high == doctest::Approx(two_pi * 6.1e9));
  CHECK(config.qrm.omega_q_low == doctest::Approx(two_pi * 5.1e9));
  CHECK(config.qrm.g == doctest::Approx(two_pi * 2.0e9));
  CHECK(config.spin.omega == doctest::Approx(two_pi * 2.0e6));
  CHECK(config.spin.omega_prime == doctest::Approx(two_pi * 2.0e6));
  CHECK(config.trials == 30);
  CHECK(config.gates.size() == 7);
}

TEST_CASE("a config echo round-trips exactly") {
  qpg::ExperimentConfig config = qpg::default_config();
  config.experiment = "simulate-qrm";
  config.gates = {qpg::GateKind::S, qpg::GateKind::CZ};
  config.trials = 5;
  config.seed = 99;
  config.tolerance = 2.5e-4;
  config.noise.kind = qpg::NoiseKind::STATIC_DETUNING;
  config.noise.magnitudes = {0.0, 1.25e3};
  config.noise.dd_cycles = 4;
  config.qrm_sim.dt = 7.5e-10;

  const qpg::ExperimentConfig parsed =
      qpg::parse_config_json(qpg::config_to_json(config));
  CHECK(parsed.experiment == config.experiment);
  CHECK(parsed.gates == config.gates);
  CHECK(parsed.trials == config.trials);
  CHECK(parsed.seed == config.seed);
  CHECK(parsed.tolerance == config.tolerance);
  CHECK(parsed.noise.kind == config.noise.kind);
  CHECK(parsed.noise.magnitudes == config.noise.magnitudes);
  CHECK(parsed.noise.dd_cycles == config.noise.dd_cycles);
  CHECK(parsed.qrm_sim.dt == config.qrm_sim.dt);
  CHECK(parsed.qrm.omega_c == config.qrm.omega_c);
  // A second echo is byte-identical: serialization is canonical.
  CHECK(qpg::config_to_json(parsed) == qpg::config_to_json(config));
}

TEST_CASE("unknown keys are rejected at every nesting level") {
  CHECK_THROWS_AS((void)qpg::parse_config_json(R"({"trails": 3})"),
                  qpg::ConfigError);
  CHECK_THROWS_AS((void)qpg::parse_config_json(R"({"qrm": {"omega": 1.0}})"),
                  qpg::ConfigError);
  CHECK_THROWS_AS((void)qpg::parse_config_json(R"({"noise": {"cycles": 2}})"),
                  qpg::ConfigError);
  CHECK_THROWS_AS((void)qpg::parse_config_json("not json"), qpg::ConfigError);
}

TEST_CASE("physical parameters must be positive and well-typed") {
  CHECK_THROWS_AS((void)qpg::parse_config_json(R"({"qrm": {"g": -1.0}})"),
                  qpg::ConfigError);
  CHECK_THROWS_AS((void)qpg::parse_config_json(R"({"spin": {"omega": 0}})"),
                  qpg::ConfigError);
  CHECK_THROWS_AS((void)qpg::parse_config_json(R"({"trials": 0})"),
                  qpg::ConfigError);
  CHECK_THROWS_AS((void)qpg::parse_config_json(R"({"seed": -4})"),
                  qpg::ConfigError);
  CHECK_THROWS_AS((void)qpg::parse_config_json(R"({"gates": ["Q"]})"),
                  qpg::ConfigError);
  CHECK_THROWS_AS((void)qpg::parse_config_json(R"({"gates": []})"),
                  qpg::ConfigError);
  CHECK_THROWS_AS((void)qpg::parse_config_json(R"({"experiment": "mystery"})"),
                  qpg::ConfigError);
  CHECK_THROWS_AS(
      (void)qpg::parse_config_json(R"({"noise": {"dd_cycles": 0}})"),
      qpg::ConfigError);
  CHECK_THROWS_AS(
      (void)qpg::parse_config_json(R"({"noise": {"magnitudes": [-1.0]}})"),
      qpg::ConfigError);
}

TEST_CASE("gate lists parse from comma-separated names") {
  const auto gates = qpg::parse_gate_list("S, T");
  REQUIRE(gates.size() == 2);
  CHECK(gates[0] == qpg::GateKind::S);
  CHECK(gates[1] == qpg::GateKind::T);
  CHECK_THROWS_AS((void)qpg::parse_gate_list("S,QQ"), qpg::ConfigError);
  CHECK_THROWS_AS((void)qpg::parse_gate_list(" , "), qpg::ConfigError);
}

TEST_CASE("the default magnitude grid spans three decades plus zero") {
  const auto grid = qpg::default_magnitude_grid(qpg::kOmegaDefault);
  REQUIRE(grid.size() == 6);
  CHECK(grid.front() == 0.0);
  CHECK(grid[1] == doctest::Approx(1e-3 * qpg::kOmegaDefault));
  CHECK(grid.back() == doctest::Approx(1e-1 * qpg::kOmegaDefault));
}

TEST_CASE("reports sort canonically and aggregate the pass flag") {
  qpg::VerificationReport report;
  report.experiment = "verify-gates";
  qpg::CheckRecord b;
  b.name = "Z";
  b.trial = -1;
  b.passed = true;
  qpg::CheckRecord a1;
  a1.name = "X";
  a1.trial = 1;
  a1.passed = true;
  qpg::CheckRecord a0;
  a0.name = "X";
  a0.trial = 0;
  a0.passed = false;
  report.records = {b, a1, a0};
  qpg::canonicalize_report(report);
  CHECK(report.records[0].name == "X");
  CHECK(report.records[0].trial == 0);
  CHECK(report.records[1].trial == 1);
  CHECK(report.records[2].name == "Z");
  CHECK_FALSE(report.passed);

  report.records[0].passed = true;
  qpg::canonicalize_report(report);
  CHECK(report.passed);
}

TEST_CASE("error records map to the numerical-failure exit code") {
  qpg::VerificationReport report;
  qpg::CheckRecord ok;
  ok.name = "X";
  ok.passed = true;
  report.records = {ok};
  qpg::canonicalize_report(report);
  CHECK(qpg::report_exit_code(report) == 0);

  report.records[0].passed = false;
  qpg::canonicalize_report(report);
  CHECK(qpg::report_exit_code(report) == 1);

  report.records[0].message = "calibration could not find the exchange peak";
  CHECK(qpg::report_exit_code(report) == 3);
}

TEST_CASE("sweep CSV uses full-precision columns") {
  qpg::SweepResult sweep;
  sweep.axis = {0.0, 0.1234567890123456789};
  sweep.mean_fidelity = {1.0, 0.5};
  sweep.min_fidelity = {1.0, 0.25};
  const std::string csv = qpg::sweep_to_csv(sweep);
  CHECK(csv.find("magnitude,mean_fidelity,min_fidelity\n") == 0);
  CHECK(csv.find("0.12345678901234568") != std::string::npos);
  CHECK(csv.find("_dd") == std::string::npos);

  sweep.mean_fidelity_dd = {1.0, 0.75};
  sweep.min_fidelity_dd = {1.0, 0.5};
  const std::string with_dd = qpg::sweep_to_csv(sweep);
  CHECK(with_dd.find("mean_fidelity_dd,min_fidelity_dd") != std::string::npos);
}

TEST_CASE("NaN record values serialize as null") {
  qpg::VerificationReport report;
  report.experiment = "simulate-qrm";
  report.config_echo = "{}";
  qpg::CheckRecord record;
  record.name = "CZ";
  record.metric = "mean_infidelity";
  record.value = std::nan("");
  record.message = "calibration failed";
  report.records = {record};
  const std::string json = qpg::report_to_json(report);
  CHECK(json.find("\"value\": null") != std::string::npos);
  CHECK(json.find("calibration failed") != std::string::npos);
}
