// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
//
// Command-line runner: verification suites and sweeps with JSON/CSV
// reports. Exit statuses: 0 all checks passed, 1 tolerance failure,
// 2 configuration error, 3 numerical failure.
#include <array>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qpg/config.hpp"
#include "qpg/errors.hpp"
#include "qpg/report.hpp"
#include "qpg/runner.hpp"

namespace {

struct SubcommandState {
  CLI::App* command = nullptr;
  std::string config_path;
  std::string out;
  std::string gates;
  std::uint64_t seed = 0;
  int trials = 0;
  double tolerance = 0.0;
  CLI::Option* seed_option = nullptr;
  CLI::Option* trials_option = nullptr;
  CLI::Option* tolerance_option = nullptr;
};

// Binds options in place: CLI11 keeps pointers to the state's members, so
// the state must already live at its final address.
void init_subcommand(SubcommandState& state, CLI::App& app, const std::string& name,
                     const std::string& description) {
  state.command = app.add_subcommand(name, description);
  state.command->add_option("--config", state.config_path,
                            "JSON config file (defaults overlaid with flags)");
  state.command->add_option("--out", state.out, "output path for the report");
  state.command->add_option("--gates", state.gates,
                            "comma-separated gate selection, e.g. S,T");
  state.seed_option =
      state.command->add_option("--seed", state.seed, "base random seed");
  state.trials_option =
      state.command->add_option("--trials", state.trials, "random trials per gate");
  state.tolerance_option = state.command->add_option(
      "--tolerance", state.tolerance, "override the per-check tolerances");
}

qpg::ExperimentConfig resolve_config(const SubcommandState& state,
                                     const std::string& experiment) {
  qpg::ExperimentConfig config = state.config_path.empty()
                                     ? qpg::default_config()
                                     : qpg::load_config_file(state.config_path);
  if (!config.experiment.empty() && config.experiment != experiment) {
    throw qpg::ConfigError("config file is for experiment '" + config.experiment +
                           "', not '" + experiment + "'");
  }
  config.experiment = experiment;
  if (!state.out.empty()) {
    config.output_path = state.out;
  }
  if (!state.gates.empty()) {
    config.gates = qpg::parse_gate_list(state.gates);
  }
  if (state.seed_option->count() > 0) {
    config.seed = state.seed;
  }
  if (state.trials_option->count() > 0) {
    config.trials = state.trials;
  }
  if (state.tolerance_option->count() > 0) {
    config.tolerance = state.tolerance;
  }
  qpg::validate_config(config);
  return config;
}

// "base", "base.csv", and "base.json" all name the pair base.csv/base.json.
std::string sweep_base_path(const std::string& path) {
  for (const char* suffix : {".csv", ".json"}) {
    const std::string s(suffix);
    if (path.size() > s.size() &&
        path.compare(path.size() - s.size(), s.size(), s) == 0) {
      return path.substr(0, path.size() - s.size());
    }
  }
  return path;
}

void print_summary(const qpg::VerificationReport& report) {
  for (const qpg::CheckRecord& record : report.records) {
    std::cout << record.name << " " << record.metric;
    if (record.message.empty()) {
      std::cout << " = " << record.value << " (tolerance " << record.tolerance
                << ") " << (record.passed ? "PASS" : "FAIL") << "\n";
    } else {
      std::cout << " ERROR: " << record.message << "\n";
    }
  }
  std::cout << (report.passed ? "PASS" : "FAIL") << "\n";
}

int run_subcommand(const SubcommandState& state, const std::string& name) {
  const qpg::ExperimentConfig config = resolve_config(state, name);
  if (name == "noise-sweep") {
    const qpg::SweepArtifacts artifacts = qpg::run_noise_sweep(config);
    const std::string csv = qpg::sweep_to_csv(artifacts.sweep);
    if (config.output_path.empty()) {
      std::cout << csv;
    } else {
      const std::string base = sweep_base_path(config.output_path);
      qpg::write_text_file(base + ".csv", csv);
      qpg::write_text_file(base + ".json",
                           qpg::sweep_report_json(artifacts.report, artifacts.sweep));
      std::cout << "wrote " << base << ".csv and " << base << ".json\n";
    }
    return 0;
  }
  const qpg::VerificationReport report = qpg::run_experiment(config);
  if (config.output_path.empty()) {
    std::cout << qpg::report_to_json(report);
  } else {
    qpg::write_text_file(config.output_path, qpg::report_to_json(report));
    print_summary(report);
  }
  return qpg::report_exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification toolkit for hybridly protected holonomic gates"};
  app.require_subcommand(1);

  std::array<SubcommandState, 4> states;
  init_subcommand(states[0], app, "verify-gates",
                  "exact-layer catalog synthesis vs expected unitaries");
  init_subcommand(states[1], app, "verify-protection",
                  "holonomy, parallel-transport, decoupling and dephasing certificates");
  init_subcommand(states[2], app, "simulate-qrm",
                  "physical-layer gate fidelities with calibrated drives");
  init_subcommand(states[3], app, "noise-sweep",
                  "fidelity vs noise magnitude, CSV + JSON output");

  CLI::App* defaults_cmd =
      app.add_subcommand("defaults", "print the default parameter config");
  std::string defaults_out;
  defaults_cmd->add_option("--out", defaults_out, "also write the config here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (defaults_cmd->parsed()) {
      const std::string text = qpg::config_to_json(qpg::default_config());
      std::cout << text;
      if (!defaults_out.empty()) {
        qpg::write_text_file(defaults_out, text);
      }
      return 0;
    }
    for (const SubcommandState& state : states) {
      if (state.command->parsed()) {
        return run_subcommand(state, state.command->get_name());
      }
    }
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const qpg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qpg::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
