// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qpg/logical.hpp"
#include "qpg/numerics.hpp"

namespace qpg {

// Largest dense product dimension the physical layer will materialize.
inline constexpr Eigen::Index kMaxProductDim = 1296;

// One qubit-oscillator site: H = omega_c a†a + (omega_q/2) sigma_z
// + g (a + a†) sigma_x on fock_cutoff oscillator levels x 2 qubit levels.
struct QrmSite {
  double omega_c = 0.0;  // rad/s
  double omega_q = 0.0;  // rad/s
  double g = 0.0;        // rad/s
  int fock_cutoff = 20;
};

// The lowest kept eigenstates of one site. Eigenvector phases are gauged by
// making the largest-magnitude component real positive, so downstream
// matrix elements are reproducible.
struct QrmEigenbasis {
  int kept_levels = 0;
  int fock_cutoff = 0;
  Eigen::VectorXd energies;  // ascending, rad/s
  Operator vectors;          // (2 * fock_cutoff) x kept_levels, orthonormal
  double effective_qubit_splitting = 0.0;  // E1 - E0
  double truncation_shift = 0.0;  // max kept-energy change at fock_cutoff + 10
};

// A modulated hopping J cos(omega_drive t + phi) (a†+a)_a (a†+a)_b between
// two sites. calibrated_target records the effective exchange strength the
// drive was tuned to (zero if not calibrated).
struct HoppingDrive {
  int a = 0;
  int b = 1;
  double j = 0.0;            // rad/s
  double omega_drive = 0.0;  // rad/s
  double phi = 0.0;          // radians
  double calibrated_target = 0.0;  // rad/s
};

// A chain of sites with their kept eigenbases and calibrated reference
// drives (one per coupled pair). Dense operators over the product of the
// kept levels are only materialized per propagation stage and must stay
// within kMaxProductDim.
struct CoupledQrmSystem {
  std::vector<QrmSite> sites;
  std::vector<QrmEigenbasis> bases;
  std::vector<HoppingDrive> drives;
};

// Numerical controls for the physical-layer propagation.
struct QrmSimOptions {
  double dt = 1.0e-9;           // seconds per integrator step
  double leakage_limit = 0.01;  // mean endpoint leakage triggering an error
};

// Single-site Rabi Hamiltonian on the truncated oscillator space,
// basis kron(oscillator, qubit).
Operator rabi_hamiltonian(const QrmSite& site, int fock_cutoff);

// Exact diagonalization of one site; keeps the lowest `kept` levels and
// certifies convergence by re-running at fock_cutoff + 10 (energy shifts
// must stay below 1e-6 * omega_c, else TruncationNotConverged).
QrmEigenbasis diagonalize_qrm(const QrmSite& site, int kept);

// Matrix of (a + a†) in the kept eigenbasis (kept x kept, Hermitian, real).
Operator project_hopping_operator(const QrmEigenbasis& basis);

// Product-basis energies E_J = sum of site energies.
Eigen::VectorXd product_energies(const CoupledQrmSystem& sys);

// Product dimension; throws DimensionOverflow beyond kMaxProductDim.
Eigen::Index product_dim(const CoupledQrmSystem& sys);

// (a+a†)_a (a+a†)_b in the kept product basis.
Operator embed_pair_hopping(const CoupledQrmSystem& sys, int a, int b);

// Full coupled Hamiltonian at time t in the kept product eigenbasis:
// diag(E) + sum_d J_d cos(omega_d t + phi_d) X_a X_b.
Operator build_coupled_hamiltonian(const CoupledQrmSystem& sys, double t);

// One piecewise-constant control window: the listed drives (with window-
// resolved amplitudes and phases) are active for `duration`.
struct DriveWindow {
  double duration = 0.0;
  std::vector<HoppingDrive> drives;
};

// Evolves interaction-picture state columns through one window starting at
// global time t0. Uses a first-order Magnus step with closed-form
// oscillatory integrals, so fast phase factors are integrated exactly and
// the step size is limited only by the slow exchange dynamics.
void propagate_window(const CoupledQrmSystem& sys, const DriveWindow& window, double t0,
                      const QrmSimOptions& opts, Operator& block);

// Measures the first full population-exchange time between |E1 E0> and
// |E0 E1> of a two-site system under the drive: returns the exchange
// half-period (twice the transfer peak time). Throws CalibrationFailed if
// no transfer peak is found in the search window.
double measure_exchange_halfperiod(const QrmSite& site_a, const QrmSite& site_b,
                                   int kept, const HoppingDrive& drive,
                                   double target_omega, const QrmSimOptions& opts);

// Tunes a hopping drive between two sites so the effective exchange
// strength equals target_omega: drive frequency at the difference of the
// effective qubit splittings (zero for identical sites: static coupling),
// J from the first-principles estimate then refined by bisection until the
// exchange half-period matches pi / target_omega within 0.1%.
// omega_drive_override forces a drive frequency (diagnostics).
HoppingDrive calibrate_drive(const CoupledQrmSystem& sys, int site_a, int site_b,
                             double target_omega, const QrmSimOptions& opts = {},
                             std::optional<double> omega_drive_override = std::nullopt);

// Calibrates one reference drive (at omega_ref) per distinct coupled pair
// appearing in the schedule and stores them in sys.drives.
void calibrate_for_schedule(CoupledQrmSystem& sys, const GateSchedule& schedule,
                            double omega_ref, const QrmSimOptions& opts = {});

struct PhysicalGateResult {
  double mean_fidelity = 0.0;
  double min_fidelity = 0.0;
  std::vector<double> per_trial;
  double mean_leakage = 0.0;
  Operator logical_matrix;  // realized logical-subspace matrix
};

// Simulates the pulse schedule on the physical layer: maps each spin-layer
// coupling onto its calibrated drive (amplitude scaled linearly with the
// requested strength, phase shifted by pi for inverted segments),
// propagates the logical basis through the stages of the schedule in the
// interaction picture, and scores seeded Haar-random logical states
// against the schedule's ideal logical action. Stages touching disjoint
// site sets are propagated on their own sub-systems, so gate compositions
// never materialize the full product space. Throws LeakageExceeded if the
// mean endpoint population outside the effective-qubit manifold exceeds
// opts.leakage_limit.
PhysicalGateResult simulate_physical_gate(const CoupledQrmSystem& sys,
                                          const GateSchedule& schedule, int trials,
                                          std::uint64_t seed,
                                          const QrmSimOptions& opts = {});

// Paper-default site parameters.
struct QrmParams {
  double omega_c = 2.0 * 3.14159265358979323846 * 7.0e9;
  double omega_q_high = 2.0 * 3.14159265358979323846 * 6.1e9;
  double omega_q_low = 2.0 * 3.14159265358979323846 * 5.1e9;
  double g = 2.0 * 3.14159265358979323846 * 2.0e9;
  int fock_cutoff = 20;
  int kept_levels = 5;
};

// Site layouts for the catalog gates (auxiliary site first where present):
// three sites (high, low, low) for single-qubit gates, four sites
// (high, high, low, low) for the two-qubit phase gate, five sites
// (low, high, high, low, low) for the composed CZ.
CoupledQrmSystem make_single_gate_system(const QrmParams& params = {});
CoupledQrmSystem make_two_gate_system(const QrmParams& params = {});
CoupledQrmSystem make_cz_system(const QrmParams& params = {});

// Logical basis of a site register as per-site level lists (level 0 =
// effective ground = spin |1>, level 1 = spin |0>), for 3/4/5-site layouts.
std::vector<std::vector<int>> logical_site_configs(int num_sites);

// Builds the proper system for the catalog gate, calibrates the drives it
// needs, and runs the physical simulation.
PhysicalGateResult simulate_catalog_gate(GateKind kind, int trials, std::uint64_t seed,
                                         const QrmParams& params = {},
                                         const QrmSimOptions& opts = {});

}  // namespace qpg
