// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qpg/logical.hpp"
#include "qpg/numerics.hpp"

namespace qpg {

// A computational-basis-aligned subspace with its projector.
struct Subspace {
  std::vector<Eigen::Index> basis_kets;
  Operator projector;
};

Subspace subspace_from_kets(const std::vector<Eigen::Index>& kets, Eigen::Index dim);

// The two ground/excited auxiliary-branch subspaces of the three-qubit
// register: {|001>, |010>} and {|101>, |110>}.
Subspace s0_subspace();
Subspace s1_subspace();

// Global decoupling pulses {I, X^N, Y^N, Z^N}.
struct DecouplingGroup {
  std::array<Operator, 4> elements;
};

DecouplingGroup make_decoupling_group(int num_qubits);

// ||(I - P) U P||_F: endpoint invariance of S under U.
double check_subspace_invariance(const Operator& u, const Subspace& s);

// Maximum of ||P(t) H(t) P(t)||_F / ||H(t)||_F over a uniform grid of
// `samples` points per segment, with P(t) = U(t) P U(t)†. The residual is
// normalized by the segment Hamiltonian norm so the certificate is
// independent of the drive-strength scale; a vanishing value certifies
// parallel transport (zero dynamical phase). `extra_term`, if given, is
// added to every segment Hamiltonian (both for the evolution and the
// residual), modeling a static detuning.
double check_parallel_transport(const GateSchedule& schedule, const Subspace& s,
                                int samples = 100, const Operator* extra_term = nullptr);

// ||[H, G_j]||_F for each group element.
std::array<double, 4> dd_commutators(const Operator& h, const DecouplingGroup& group);

struct DdCycleResult {
  double fidelity_with_dd = 0.0;
  double fidelity_without_dd = 0.0;
  // First-order coherent-error measures of the same two propagators.
  double error_amplitude_with_dd = 0.0;
  double error_amplitude_without_dd = 0.0;
};

// Evolves under H_sys + H_err for four tau/4 sub-intervals conjugated by
// the decoupling group (element 0 first in time) and compares against
// exp(-i H_sys tau) via phase-invariant process fidelity; also runs the
// same interval without pulses.
DdCycleResult simulate_dd_cycle(const Operator& h_sys, const Operator& h_err, double tau,
                                const DecouplingGroup& group);

struct DdSuppressionResult {
  std::vector<double> error_times;  // epsilon * tau grid
  std::vector<double> amplitude_with_dd;
  std::vector<double> amplitude_without_dd;
  double slope_with_dd = 0.0;
  double slope_without_dd = 0.0;
};

// Scaling experiment: three-qubit lambda Hamiltonian plus a static sigma_z
// error on qubit 1, error-time grid epsilon*tau in [1e-3, 1e-1]. The
// coherent-error amplitude after one decoupling cycle scales quadratically
// with the pulses and linearly without.
DdSuppressionResult dd_suppression_slopes(int points = 13);

// Applies exp(-i (phi/2) sum sigma_z) over the encoded pair qubits to a
// fixed grid of logical states; returns the maximum state infidelity
// (zero for a dephasing-free encoding).
double collective_dephasing_invariance(const LogicalEncoding& enc, double phi);

// Randomized version: n_states Haar logical states x n_phis magnitudes.
double collective_dephasing_certificate(const LogicalEncoding& enc, int n_states,
                                        int n_phis, std::uint64_t seed);

// Dephasing of a single physical qubit (not collective): returns the
// maximum state infidelity over the fixed grid; sin^2(phi/2) when the
// qubit belongs to an equal-superposition pair.
double single_qubit_dephasing_infidelity(const LogicalEncoding& enc, double phi, int qubit);

}  // namespace qpg
