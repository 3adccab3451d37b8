// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpg/logical.hpp"
#include "qpg/noise.hpp"
#include "qpg/qrm.hpp"

namespace qpg {

// Spin-layer drive strengths in rad/s, one per schedule-builder knob.
struct SpinConfig {
  double omega = kOmegaDefault;
  double omega12 = kOmegaDefault;
  double omega_prime = kOmegaDefault;
  double omega34 = kOmegaDefault;
};

// Noise-sweep settings. An empty magnitude list selects the default grid
// (zero plus five logarithmic points from 1e-3 to 1e-1 of the drive
// strength); dd_cycles unset runs the sweep without decoupling columns.
struct NoiseConfig {
  NoiseKind kind = NoiseKind::INDEPENDENT_Z;
  std::vector<double> magnitudes;
  int target_qubit = 1;
  std::optional<int> dd_cycles;
};

// Fully resolved experiment settings: built-in defaults overlaid with an
// optional JSON config file and then with command-line flags.
struct ExperimentConfig {
  std::string experiment;  // subcommand name; may be empty in a file
  std::vector<GateKind> gates = catalog_kinds();
  int trials = 30;
  std::uint64_t seed = 2026;
  std::string output_path;
  std::optional<double> tolerance;  // overrides the per-check defaults
  SpinConfig spin;
  QrmParams qrm;
  QrmSimOptions qrm_sim;
  NoiseConfig noise;
};

// The physical-parameter defaults for every field.
ExperimentConfig default_config();

// Strict JSON ingestion: unknown keys at any nesting level, non-positive
// physical parameters, empty gate lists, unknown gate or noise-kind names,
// and type mismatches all raise ConfigError.
ExperimentConfig parse_config_json(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

// Full echo of a resolved config; parse_config_json(config_to_json(c))
// reproduces c exactly.
std::string config_to_json(const ExperimentConfig& config);

// Range checks shared by the parser and the flag-overlay path.
void validate_config(const ExperimentConfig& config);

// Comma-separated gate selection, e.g. "S,T".
std::vector<GateKind> parse_gate_list(const std::string& csv);

// Schedule-builder frequencies from the spin block.
GateParams gate_params(const SpinConfig& spin);

// Zero plus five log-spaced magnitudes from 1e-3 to 1e-1 times omega.
std::vector<double> default_magnitude_grid(double omega);

}  // namespace qpg
