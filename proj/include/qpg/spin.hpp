// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#pragma once

#include <vector>

#include "qpg/numerics.hpp"

namespace qpg {

// One XY-exchange coupling strength Omega_mn between qubits m and n:
// Omega * (sigma+^m sigma-^n + sigma-^m sigma+^n), in rad/s.
struct XYCoupling {
  int m = 0;
  int n = 0;
  double strength = 0.0;  // rad/s
};

// A pure XY-exchange Hamiltonian on num_qubits tensor factors.
// Qubit 0 is the leftmost (most significant) tensor factor; basis kets are
// written |q0 q1 ...>. |0> is the excited state, |1> the ground state,
// sigma+ = |0><1|, sigma- = |1><0|.
struct SpinModel {
  int num_qubits = 0;
  std::vector<XYCoupling> couplings;
};

// Throws IndexOutOfRange for out-of-range or equal indices; rejects
// duplicate unordered pairs.
void validate_spin_model(const SpinModel& model);

// Sum of Omega_mn (sigma+^m sigma-^n + h.c.) embedded in the 2^N space.
// Hermitian; conserves total excitation number.
Operator build_xy_hamiltonian(const SpinModel& model);

// Three-qubit lambda configuration (qubits: auxiliary=0, pair=1,2) with
// couplings Omega_A1 = Omega sin(theta/2) on (0,1) and
// Omega_A2 = Omega cos(theta/2) on (0,2), so tan(theta/2) = Omega_A1/Omega_A2
// and the quadrature sum is Omega.
SpinModel h1_params(double theta, double omega);

// Three-qubit intra-pair exchange Omega12 on (1,2).
SpinModel h2_params(double omega12);

// Four-qubit configuration (qubits 0..3 = first pair 0,1 and second pair 2,3)
// with couplings Omega23 = Omega' sin(theta'/2) on (1,2) and
// Omega24 = Omega' cos(theta'/2) on (1,3).
SpinModel h3_params(double theta_prime, double omega_prime);

// Four-qubit exchange Omega34 on (2,3).
SpinModel h4_params(double omega34);

// Closed-form single-qubit reflection on the logical basis {|0>_L, |1>_L}:
// (-1)^{m+1} cos(theta) sigma_z - sin(theta) sigma_x, for auxiliary branch
// m in {0, 1}.
Operator u1_analytic(double theta, int m);

// Closed-form geometric phase gate on the logical basis:
// exp(i (-1)^m theta sigma_z).
Operator u2_analytic(double theta, int m);

// Closed-form two-qubit phase gate on the two-logical-qubit basis:
// exp(-i theta' sigma_z x sigma_z).
Operator u4_analytic(double theta_prime);

// Pauli matrices and helpers.
Operator pauli_x();
Operator pauli_y();
Operator pauli_z();
Operator pauli_id();

// Single-qubit operator op embedded at `qubit` of an n-qubit register.
Operator embed_single_qubit(const Operator& op, int qubit, int num_qubits);

// N-fold tensor power of a single-qubit operator.
Operator tensor_power(const Operator& op, int num_qubits);

// Sum of sigma_z over the listed qubits (all qubits if empty list).
Operator total_sigma_z(int num_qubits, const std::vector<int>& qubits = {});

}  // namespace qpg
