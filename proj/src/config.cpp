// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#include "qpg/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qpg/errors.hpp"

namespace qpg {
namespace {

using nlohmann::json;

const std::set<std::string> kExperiments = {
    "verify-gates", "verify-protection", "simulate-qrm", "noise-sweep"};

// Rejects keys outside `allowed` so typos never silently fall back to a
// default value.
void expect_keys(const json& obj, const std::string& where,
                 const std::set<std::string>& allowed) {
  if (!obj.is_object()) {
    throw ConfigError("'" + where + "' must be a JSON object");
  }
  for (const auto& item : obj.items()) {
    if (allowed.find(item.key()) == allowed.end()) {
      throw ConfigError("unknown config key '" + where + "." + item.key() + "'");
    }
  }
}

double require_number(const json& v, const std::string& where) {
  if (!v.is_number()) {
    throw ConfigError("'" + where + "' must be a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    throw ConfigError("'" + where + "' must be finite");
  }
  return x;
}

int require_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) {
    throw ConfigError("'" + where + "' must be an integer");
  }
  return v.get<int>();
}

void parse_spin(const json& obj, SpinConfig& spin) {
  expect_keys(obj, "spin", {"omega", "omega12", "omega_prime", "omega34"});
  if (obj.contains("omega")) spin.omega = require_number(obj["omega"], "spin.omega");
  if (obj.contains("omega12")) spin.omega12 = require_number(obj["omega12"], "spin.omega12");
  if (obj.contains("omega_prime"))
    spin.omega_prime = require_number(obj["omega_prime"], "spin.omega_prime");
  if (obj.contains("omega34")) spin.omega34 = require_number(obj["omega34"], "spin.omega34");
}

void parse_qrm(const json& obj, QrmParams& qrm, QrmSimOptions& sim) {
  expect_keys(obj, "qrm",
              {"omega_c", "omega_q_high", "omega_q_low", "g", "fock_cutoff",
               "kept_levels", "dt", "leakage_limit"});
  if (obj.contains("omega_c")) qrm.omega_c = require_number(obj["omega_c"], "qrm.omega_c");
  if (obj.contains("omega_q_high"))
    qrm.omega_q_high = require_number(obj["omega_q_high"], "qrm.omega_q_high");
  if (obj.contains("omega_q_low"))
    qrm.omega_q_low = require_number(obj["omega_q_low"], "qrm.omega_q_low");
  if (obj.contains("g")) qrm.g = require_number(obj["g"], "qrm.g");
  if (obj.contains("fock_cutoff"))
    qrm.fock_cutoff = require_int(obj["fock_cutoff"], "qrm.fock_cutoff");
  if (obj.contains("kept_levels"))
    qrm.kept_levels = require_int(obj["kept_levels"], "qrm.kept_levels");
  if (obj.contains("dt")) sim.dt = require_number(obj["dt"], "qrm.dt");
  if (obj.contains("leakage_limit"))
    sim.leakage_limit = require_number(obj["leakage_limit"], "qrm.leakage_limit");
}

void parse_noise(const json& obj, NoiseConfig& noise) {
  expect_keys(obj, "noise", {"kind", "magnitudes", "target_qubit", "dd_cycles"});
  if (obj.contains("kind")) {
    if (!obj["kind"].is_string()) {
      throw ConfigError("'noise.kind' must be a string");
    }
    noise.kind = noise_kind_from_name(obj["kind"].get<std::string>());
  }
  if (obj.contains("magnitudes")) {
    if (!obj["magnitudes"].is_array()) {
      throw ConfigError("'noise.magnitudes' must be an array");
    }
    noise.magnitudes.clear();
    for (const json& m : obj["magnitudes"]) {
      noise.magnitudes.push_back(require_number(m, "noise.magnitudes[]"));
    }
  }
  if (obj.contains("target_qubit"))
    noise.target_qubit = require_int(obj["target_qubit"], "noise.target_qubit");
  if (obj.contains("dd_cycles")) {
    if (obj["dd_cycles"].is_null()) {
      noise.dd_cycles.reset();
    } else {
      noise.dd_cycles = require_int(obj["dd_cycles"], "noise.dd_cycles");
    }
  }
}

void require_positive(double value, const std::string& name) {
  if (!(value > 0.0)) {
    throw ConfigError("'" + name + "' must be positive");
  }
}

}  // namespace

ExperimentConfig default_config() { return ExperimentConfig{}; }

ExperimentConfig parse_config_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  expect_keys(root, "config",
              {"experiment", "gates", "trials", "seed", "out", "tolerance",
               "spin", "qrm", "noise"});

  ExperimentConfig config;
  if (root.contains("experiment")) {
    if (!root["experiment"].is_string()) {
      throw ConfigError("'experiment' must be a string");
    }
    config.experiment = root["experiment"].get<std::string>();
  }
  if (root.contains("gates")) {
    if (!root["gates"].is_array()) {
      throw ConfigError("'gates' must be an array of gate names");
    }
    config.gates.clear();
    for (const json& g : root["gates"]) {
      if (!g.is_string()) {
        throw ConfigError("'gates' entries must be strings");
      }
      try {
        config.gates.push_back(gate_kind_from_name(g.get<std::string>()));
      } catch (const UnknownGate& e) {
        throw ConfigError(e.what());
      }
    }
  }
  if (root.contains("trials")) config.trials = require_int(root["trials"], "trials");
  if (root.contains("seed")) {
    if (!root["seed"].is_number_integer() ||
        (root["seed"].is_number_integer() && !root["seed"].is_number_unsigned() &&
         root["seed"].get<long long>() < 0)) {
      throw ConfigError("'seed' must be a non-negative integer");
    }
    config.seed = root["seed"].get<std::uint64_t>();
  }
  if (root.contains("out")) {
    if (!root["out"].is_string()) {
      throw ConfigError("'out' must be a string");
    }
    config.output_path = root["out"].get<std::string>();
  }
  if (root.contains("tolerance")) {
    if (root["tolerance"].is_null()) {
      config.tolerance.reset();
    } else {
      config.tolerance = require_number(root["tolerance"], "tolerance");
    }
  }
  if (root.contains("spin")) parse_spin(root["spin"], config.spin);
  if (root.contains("qrm")) parse_qrm(root["qrm"], config.qrm, config.qrm_sim);
  if (root.contains("noise")) parse_noise(root["noise"], config.noise);

  validate_config(config);
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_json(buffer.str());
}

std::string config_to_json(const ExperimentConfig& config) {
  json root;
  root["experiment"] = config.experiment;
  json gates = json::array();
  for (GateKind kind : config.gates) {
    gates.push_back(gate_kind_name(kind));
  }
  root["gates"] = gates;
  root["trials"] = config.trials;
  root["seed"] = config.seed;
  root["out"] = config.output_path;
  root["tolerance"] = config.tolerance ? json(*config.tolerance) : json(nullptr);
  root["spin"] = {{"omega", config.spin.omega},
                  {"omega12", config.spin.omega12},
                  {"omega_prime", config.spin.omega_prime},
                  {"omega34", config.spin.omega34}};
  root["qrm"] = {{"omega_c", config.qrm.omega_c},
                 {"omega_q_high", config.qrm.omega_q_high},
                 {"omega_q_low", config.qrm.omega_q_low},
                 {"g", config.qrm.g},
                 {"fock_cutoff", config.qrm.fock_cutoff},
                 {"kept_levels", config.qrm.kept_levels},
                 {"dt", config.qrm_sim.dt},
                 {"leakage_limit", config.qrm_sim.leakage_limit}};
  root["noise"] = {{"kind", noise_kind_name(config.noise.kind)},
                   {"magnitudes", config.noise.magnitudes},
                   {"target_qubit", config.noise.target_qubit},
                   {"dd_cycles", config.noise.dd_cycles
                                     ? json(*config.noise.dd_cycles)
                                     : json(nullptr)}};
  return root.dump(2) + "\n";
}

void validate_config(const ExperimentConfig& config) {
  if (!config.experiment.empty() &&
      kExperiments.find(config.experiment) == kExperiments.end()) {
    throw ConfigError("unknown experiment '" + config.experiment + "'");
  }
  if (config.gates.empty()) {
    throw ConfigError("gate selection is empty");
  }
  if (config.trials < 1) {
    throw ConfigError("'trials' must be at least 1");
  }
  if (config.tolerance) {
    require_positive(*config.tolerance, "tolerance");
  }
  require_positive(config.spin.omega, "spin.omega");
  require_positive(config.spin.omega12, "spin.omega12");
  require_positive(config.spin.omega_prime, "spin.omega_prime");
  require_positive(config.spin.omega34, "spin.omega34");
  require_positive(config.qrm.omega_c, "qrm.omega_c");
  require_positive(config.qrm.omega_q_high, "qrm.omega_q_high");
  require_positive(config.qrm.omega_q_low, "qrm.omega_q_low");
  require_positive(config.qrm.g, "qrm.g");
  require_positive(config.qrm_sim.dt, "qrm.dt");
  require_positive(config.qrm_sim.leakage_limit, "qrm.leakage_limit");
  if (config.qrm.fock_cutoff < 2) {
    throw ConfigError("'qrm.fock_cutoff' must be at least 2");
  }
  if (config.qrm.kept_levels < 2 ||
      config.qrm.kept_levels > 2 * config.qrm.fock_cutoff) {
    throw ConfigError("'qrm.kept_levels' must lie in [2, 2*fock_cutoff]");
  }
  for (double m : config.noise.magnitudes) {
    if (!(m >= 0.0) || !std::isfinite(m)) {
      throw ConfigError("'noise.magnitudes' entries must be non-negative");
    }
  }
  if (config.noise.target_qubit < 0) {
    throw ConfigError("'noise.target_qubit' must be non-negative");
  }
  if (config.noise.dd_cycles && *config.noise.dd_cycles < 1) {
    throw ConfigError("'noise.dd_cycles' must be at least 1");
  }
}

std::vector<GateKind> parse_gate_list(const std::string& csv) {
  std::vector<GateKind> gates;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) {
      continue;
    }
    try {
      gates.push_back(gate_kind_from_name(item.substr(first, last - first + 1)));
    } catch (const UnknownGate& e) {
      throw ConfigError(e.what());
    }
  }
  if (gates.empty()) {
    throw ConfigError("gate selection is empty");
  }
  return gates;
}

GateParams gate_params(const SpinConfig& spin) {
  GateParams params;
  params.omega = spin.omega;
  params.omega12 = spin.omega12;
  params.omega_prime = spin.omega_prime;
  params.omega34 = spin.omega34;
  return params;
}

std::vector<double> default_magnitude_grid(double omega) {
  std::vector<double> grid = {0.0};
  for (int k = 0; k <= 4; ++k) {
    grid.push_back(omega * std::pow(10.0, -3.0 + 0.5 * k));
  }
  return grid;
}

}  // namespace qpg
