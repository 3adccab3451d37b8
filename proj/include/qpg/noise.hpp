// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpg/logical.hpp"
#include "qpg/numerics.hpp"

namespace qpg {

// Coherent error families for the spin-layer noise experiments. All are
// static Hamiltonian perturbations or control-parameter errors; stochastic
// dissipation is out of scope.
enum class NoiseKind {
  COLLECTIVE_Z,             // (magnitude / 2) * sum of sigma_z over all qubits
  INDEPENDENT_Z,            // (magnitude / 2) * seeded unit combination of sigma_z terms
  STATIC_DETUNING,          // magnitude * sigma_z on one target qubit
  CONTROL_AMPLITUDE_ERROR,  // couplings scaled by (1 + magnitude)
};

struct NoiseChannel {
  NoiseKind kind = NoiseKind::COLLECTIVE_Z;
  double magnitude = 0.0;     // rad/s for Hamiltonian errors, fraction for amplitude
  std::uint64_t seed = 0;     // drives the dephasing direction and the trial states
  int target_qubit = 1;       // STATIC_DETUNING only
};

std::string noise_kind_name(NoiseKind kind);
NoiseKind noise_kind_from_name(const std::string& name);  // throws ConfigError

// Additive noise Hamiltonian of the channel on an n-qubit register (zero
// for CONTROL_AMPLITUDE_ERROR, which acts on the couplings instead).
Operator noise_generator(const NoiseChannel& channel, int num_qubits);

// Generator realized during one segment under the channel: the control part
// keeps the segment's sign (an inverted pulse flips only the drives), the
// noise term is added unchanged.
Operator noisy_segment_generator(const PulseSegment& segment, const NoiseChannel& channel);

struct NoisyGateResult {
  double mean_fidelity = 0.0;
  double min_fidelity = 0.0;
  std::vector<double> per_trial;
};

// Runs the schedule with the channel applied to every segment and scores
// seeded Haar-random logical states against the ideal (noiseless) logical
// action. Amplitude lost outside the logical subspace counts as infidelity.
// Trial t uses state seed derive_seed(channel.seed, t). Callers should keep
// |magnitude| * total_duration below one for Hamiltonian errors; collective
// dephasing is exactly harmless at any magnitude.
NoisyGateResult run_noisy_gate(const GateSchedule& schedule, const NoiseChannel& channel,
                               int trials);

// Same experiment with the four-element decoupling group interleaved:
// every segment is cut into 4 * cycles sub-intervals conjugated by the
// group elements (identity first in time). The control commutes with the
// group, so at zero magnitude the gate is reproduced exactly. Throws
// ConfigError for CONTROL_AMPLITUDE_ERROR, which is not a Hamiltonian
// error the group could average.
NoisyGateResult dd_interleaved_gate(const GateSchedule& schedule, const NoiseChannel& channel,
                                    int cycles, int trials);

// One magnitude sweep; the decoupled columns are filled when dd_cycles is
// set. Points are independent and deterministic per (channel seed, point).
struct SweepResult {
  std::vector<double> axis;  // magnitudes, as given
  std::vector<double> mean_fidelity;
  std::vector<double> min_fidelity;
  std::vector<double> mean_fidelity_dd;  // empty unless dd_cycles was set
  std::vector<double> min_fidelity_dd;
  std::string label;  // channel kind name
};

SweepResult noise_sweep(const GateSchedule& schedule, NoiseChannel channel,
                        const std::vector<double>& magnitudes, int trials,
                        std::optional<int> dd_cycles = std::nullopt);

}  // namespace qpg
