// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#pragma once

#include "qpg/config.hpp"
#include "qpg/noise.hpp"
#include "qpg/report.hpp"

namespace qpg {

// Worker count for per-gate parallelism: the QPG_THREADS environment
// variable when set (must parse to a positive integer), otherwise the
// hardware concurrency. Results are independent of the value.
int runner_thread_count();

// Exact-layer catalog synthesis vs the expected logical unitaries
// (Frobenius error including the global phase; default tolerance 1e-9).
VerificationReport run_verify_gates(const ExperimentConfig& config);

// Protection certificates: endpoint subspace invariance and parallel
// transport per catalog schedule, decoupling-group commutators per gate
// Hamiltonian, and the collective-dephasing immunity of the encodings.
VerificationReport run_verify_protection(const ExperimentConfig& config);

// Physical-layer gate fidelities on the coupled-oscillator systems with
// calibrated drives (mean infidelity vs 1e-3 single-qubit / 2e-3
// two-qubit thresholds). Calibration or leakage failures become error
// records rather than aborting the run.
VerificationReport run_simulate_qrm(const ExperimentConfig& config);

struct SweepArtifacts {
  SweepResult sweep;
  VerificationReport report;  // header + empty record list, passed = true
};

// Noise-magnitude sweep of the first selected gate's schedule, with
// decoupled columns when noise.dd_cycles is set.
SweepArtifacts run_noise_sweep(const ExperimentConfig& config);

// Dispatch on config.experiment for the three verification commands.
VerificationReport run_experiment(const ExperimentConfig& config);

// 0 all records passed, 1 tolerance failure, 3 a record carries an error.
int report_exit_code(const VerificationReport& report);

}  // namespace qpg
