// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#include "qpg/noise.hpp"

#include <array>
#include <cmath>
#include <random>
#include <utility>

#include "qpg/errors.hpp"
#include "qpg/protect.hpp"
#include "qpg/spin.hpp"

namespace qpg {
namespace {

// Salt separating the dephasing-direction stream from the trial-state
// stream derived from the same channel seed.
constexpr std::uint64_t kDirectionSalt = 0x6e6f697365ULL;

// Seeded unit vector of per-qubit dephasing weights.
Eigen::VectorXd dephasing_direction(std::uint64_t seed, int num_qubits) {
  std::mt19937_64 rng(derive_seed(seed, kDirectionSalt));
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd direction(num_qubits);
  for (int q = 0; q < num_qubits; ++q) {
    direction(q) = normal(rng);
  }
  const double norm = direction.norm();
  if (norm == 0.0) {
    direction.setConstant(1.0 / std::sqrt(static_cast<double>(num_qubits)));
    return direction;
  }
  return direction / norm;
}

void validate_channel(const NoiseChannel& channel, int num_qubits) {
  if (!std::isfinite(channel.magnitude)) {
    throw ConfigError("noise magnitude must be finite");
  }
  if (channel.kind == NoiseKind::STATIC_DETUNING &&
      (channel.target_qubit < 0 || channel.target_qubit >= num_qubits)) {
    throw IndexOutOfRange("static-detuning target qubit outside the register");
  }
}

// <L_i| U |L_j> on the canonical layout, without a unitarity guard: noisy
// propagators legitimately leak amplitude out of the logical subspace.
Operator project_register(const Operator& u, int num_qubits) {
  const std::vector<State> basis =
      logical_basis_states(default_encoding(num_qubits), num_qubits,
                           default_ancilla(num_qubits));
  const Eigen::Index dim = static_cast<Eigen::Index>(basis.size());
  Operator m(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const State column = u * basis[j];
    for (Eigen::Index i = 0; i < dim; ++i) {
      m(i, j) = basis[i].dot(column);
    }
  }
  return m;
}

// Haar-trial scoring of a realized logical matrix against the ideal one.
NoisyGateResult score_trials(const Operator& ideal, const Operator& realized, int trials,
                             std::uint64_t seed) {
  if (trials < 1) {
    throw ConfigError("at least one trial is required");
  }
  NoisyGateResult result;
  result.per_trial.reserve(trials);
  double sum = 0.0;
  double worst = 1.0;
  const int dim = static_cast<int>(ideal.rows());
  for (int trial = 0; trial < trials; ++trial) {
    const State c = haar_random_state(dim, derive_seed(seed, trial));
    const double fidelity = std::norm(State(ideal * c).dot(State(realized * c)));
    result.per_trial.push_back(fidelity);
    sum += fidelity;
    worst = std::min(worst, fidelity);
  }
  result.mean_fidelity = sum / trials;
  result.min_fidelity = worst;
  return result;
}

Operator ideal_logical_matrix(const GateSchedule& schedule) {
  const int n = schedule.num_qubits();
  return project_to_logical(synthesize(schedule), default_encoding(n), default_ancilla(n));
}

}  // namespace

std::string noise_kind_name(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::COLLECTIVE_Z:
      return "collective_z";
    case NoiseKind::INDEPENDENT_Z:
      return "independent_z";
    case NoiseKind::STATIC_DETUNING:
      return "static_detuning";
    case NoiseKind::CONTROL_AMPLITUDE_ERROR:
      return "control_amplitude_error";
  }
  throw ConfigError("unhandled noise kind");
}

NoiseKind noise_kind_from_name(const std::string& name) {
  for (NoiseKind kind : {NoiseKind::COLLECTIVE_Z, NoiseKind::INDEPENDENT_Z,
                         NoiseKind::STATIC_DETUNING, NoiseKind::CONTROL_AMPLITUDE_ERROR}) {
    if (noise_kind_name(kind) == name) {
      return kind;
    }
  }
  throw ConfigError("unknown noise kind: " + name);
}

Operator noise_generator(const NoiseChannel& channel, int num_qubits) {
  validate_channel(channel, num_qubits);
  const Eigen::Index dim = Eigen::Index(1) << num_qubits;
  switch (channel.kind) {
    case NoiseKind::COLLECTIVE_Z:
      return 0.5 * channel.magnitude * total_sigma_z(num_qubits);
    case NoiseKind::INDEPENDENT_Z: {
      const Eigen::VectorXd direction = dephasing_direction(channel.seed, num_qubits);
      Operator h = Operator::Zero(dim, dim);
      for (int q = 0; q < num_qubits; ++q) {
        h += (0.5 * channel.magnitude * direction(q)) *
             embed_single_qubit(pauli_z(), q, num_qubits);
      }
      return h;
    }
    case NoiseKind::STATIC_DETUNING:
      return channel.magnitude *
             embed_single_qubit(pauli_z(), channel.target_qubit, num_qubits);
    case NoiseKind::CONTROL_AMPLITUDE_ERROR:
      return Operator::Zero(dim, dim);
  }
  throw ConfigError("unhandled noise kind");
}

Operator noisy_segment_generator(const PulseSegment& segment, const NoiseChannel& channel) {
  if (channel.kind == NoiseKind::CONTROL_AMPLITUDE_ERROR) {
    PulseSegment scaled = segment;
    for (XYCoupling& coupling : scaled.model.couplings) {
      coupling.strength *= 1.0 + channel.magnitude;
    }
    return segment_generator(scaled);
  }
  return segment_generator(segment) +
         noise_generator(channel, segment.model.num_qubits);
}

NoisyGateResult run_noisy_gate(const GateSchedule& schedule, const NoiseChannel& channel,
                               int trials) {
  const int n = schedule.num_qubits();
  validate_channel(channel, n);
  const Operator ideal = ideal_logical_matrix(schedule);

  const Eigen::Index dim = Eigen::Index(1) << n;
  Operator u = Operator::Identity(dim, dim);
  for (const PulseSegment& segment : schedule.segments) {
    u = expm_hermitian(noisy_segment_generator(segment, channel), segment.duration) * u;
  }
  return score_trials(ideal, project_register(u, n), trials, channel.seed);
}

NoisyGateResult dd_interleaved_gate(const GateSchedule& schedule, const NoiseChannel& channel,
                                    int cycles, int trials) {
  if (cycles < 1) {
    throw ConfigError("at least one decoupling cycle is required");
  }
  if (channel.kind == NoiseKind::CONTROL_AMPLITUDE_ERROR) {
    throw ConfigError("decoupling pulses cannot average a control-amplitude error");
  }
  const int n = schedule.num_qubits();
  validate_channel(channel, n);
  const Operator ideal = ideal_logical_matrix(schedule);
  const DecouplingGroup group = make_decoupling_group(n);

  const Eigen::Index dim = Eigen::Index(1) << n;
  Operator u = Operator::Identity(dim, dim);
  for (const PulseSegment& segment : schedule.segments) {
    const Operator h = noisy_segment_generator(segment, channel);
    const double slice = segment.duration / (4.0 * cycles);
    const Operator step = expm_hermitian(h, slice);
    // Visit the toggling frames in the pulsed X-Y-X-Y order (I, X, Z, Y).
    // The array order (I, X, Y, Z) would make the dephasing toggle pattern
    // time-symmetric within a cycle, cancelling the second-order cross term
    // as well and masking the expected 1/cycles^2 residual scaling.
    constexpr std::array<int, 4> frame_order = {0, 1, 3, 2};
    for (int cycle = 0; cycle < cycles; ++cycle) {
      for (int index : frame_order) {
        const Operator& g = group.elements[std::size_t(index)];
        u = g.adjoint() * step * g * u;  // identity frame acts first
      }
    }
  }
  return score_trials(ideal, project_register(u, n), trials, channel.seed);
}

SweepResult noise_sweep(const GateSchedule& schedule, NoiseChannel channel,
                        const std::vector<double>& magnitudes, int trials,
                        std::optional<int> dd_cycles) {
  SweepResult sweep;
  sweep.axis = magnitudes;
  sweep.label = noise_kind_name(channel.kind);
  for (double magnitude : magnitudes) {
    channel.magnitude = magnitude;
    const NoisyGateResult plain = run_noisy_gate(schedule, channel, trials);
    sweep.mean_fidelity.push_back(plain.mean_fidelity);
    sweep.min_fidelity.push_back(plain.min_fidelity);
    if (dd_cycles) {
      const NoisyGateResult with_dd =
          dd_interleaved_gate(schedule, channel, *dd_cycles, trials);
      sweep.mean_fidelity_dd.push_back(with_dd.mean_fidelity);
      sweep.min_fidelity_dd.push_back(with_dd.min_fidelity);
    }
  }
  return sweep;
}

}  // namespace qpg
