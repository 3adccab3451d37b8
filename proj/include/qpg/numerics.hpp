// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace qpg {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using State = Eigen::VectorXcd;

// Relative Frobenius tolerance for Hermiticity prechecks.
inline constexpr double kHermitianTol = 1e-10;

struct EigResult {
  Eigen::VectorXd values;  // ascending
  Operator vectors;        // columns are eigenvectors, unitary
};

// Kronecker product; dim = dimA * dimB.
Operator kron(const Operator& a, const Operator& b);

// Hermitian eigendecomposition with ascending eigenvalues.
// Throws NotHermitian if ||H - H†||_F > tol * ||H||_F, ConvergenceFailure
// if the eigensolver does not converge.
EigResult eig_hermitian(const Operator& h, double tol = kHermitianTol);

// e^{-iHt} (hbar = 1) via eigendecomposition. Throws NotHermitian.
Operator expm_hermitian(const Operator& h, double t, double tol = kHermitianTol);

// Time-ordered propagator for U' = -i H(t) U over [t0, t1], fourth-order
// commutator-free scheme on uniform steps (two Gauss-Legendre samples and
// two exponentials per step). Throws DimensionMismatch if the sampled
// Hamiltonian dimension changes across time samples.
Operator propagate_time_dependent(const std::function<Operator(double)>& h_of_t,
                                  double t0, double t1, int steps);

// ||U†U - I||_F
double unitarity_residual(const Operator& u);

// |Tr(U_target† U_actual)| / dim  (global-phase-invariant)
double process_fidelity(const Operator& u_target, const Operator& u_actual);

// ||A - B||_F  (global-phase-sensitive comparison)
double phase_aware_distance(const Operator& a, const Operator& b);

// RMS of the centered eigenphases of U_target† U_actual. First-order in a
// coherent (Hamiltonian) error, where any fidelity-based measure is
// second-order; used to expose error-suppression scaling laws.
double coherent_error_amplitude(const Operator& u_target, const Operator& u_actual);

// |<a|b>|^2
double state_fidelity(const State& a, const State& b);

// Deterministic per-trial sub-seed (splitmix64 mix of seed and index),
// independent of evaluation order across threads.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Haar-random pure state: i.i.d. complex Gaussian amplitudes, normalized.
// Deterministic for a fixed seed (mt19937_64).
State haar_random_state(int dim, std::uint64_t seed);

// Least-squares slope of log(y) against log(x); inputs must be positive.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qpg
