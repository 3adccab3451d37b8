// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
//
// Physical-layer tests. The dressed-site reference numbers were computed
// with an independent dense-diagonalization script and are frozen here.
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "qpg/errors.hpp"
#include "qpg/logical.hpp"
#include "qpg/numerics.hpp"
#include "qpg/qrm.hpp"

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

qpg::QrmSite high_site(int fock_cutoff = 20) {
  return qpg::QrmSite{kTwoPi * 7.0e9, kTwoPi * 6.1e9, kTwoPi * 2.0e9, fock_cutoff};
}

qpg::QrmSite low_site(int fock_cutoff = 20) {
  return qpg::QrmSite{kTwoPi * 7.0e9, kTwoPi * 5.1e9, kTwoPi * 2.0e9, fock_cutoff};
}

// Smaller oscillator space and kept set: same physics, faster tests.
qpg::QrmParams reduced_params() {
  qpg::QrmParams params;
  params.fock_cutoff = 12;
  params.kept_levels = 4;
  return params;
}

}  // namespace

TEST_CASE("decoupled site reduces to oscillator and qubit ladders") {
  qpg::QrmSite site = low_site(12);
  site.g = 0.0;
  const qpg::QrmEigenbasis basis = qpg::diagonalize_qrm(site, 5);

  // Energies n * omega_c -/+ omega_q / 2, ascending.
  const double wc = site.omega_c;
  const double wq = site.omega_q;
  const std::vector<double> expected = {-0.5 * wq, 0.5 * wq, wc - 0.5 * wq, wc + 0.5 * wq,
                                        2.0 * wc - 0.5 * wq};
  for (int k = 0; k < 5; ++k) {
    CHECK(basis.energies(k) == doctest::Approx(expected[k]).epsilon(1e-12));
  }
  CHECK(basis.effective_qubit_splitting == doctest::Approx(wq).epsilon(1e-12));
  CHECK(basis.truncation_shift <= 1e-9 * wc);

  // The hopping operator keeps the bare sqrt(n) ladder and never flips the
  // qubit: levels order as (0g, 0e, 1g, 1e, 2g).
  const qpg::Operator x = qpg::project_hopping_operator(basis);
  CHECK(std::abs(x(0, 1)) < 1e-12);
  CHECK(std::abs(std::abs(x(0, 2)) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(x(1, 3)) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(x(2, 4)) - std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("dressed sites reproduce the frozen reference values") {
  const qpg::QrmEigenbasis high = qpg::diagonalize_qrm(high_site(), 5);
  const qpg::QrmEigenbasis low = qpg::diagonalize_qrm(low_site(), 5);

  CHECK(high.effective_qubit_splitting ==
        doctest::Approx(kTwoPi * 4.587919283523e9).epsilon(1e-8));
  CHECK(low.effective_qubit_splitting ==
        doctest::Approx(kTwoPi * 4.003611755347e9).epsilon(1e-8));
  CHECK(high.effective_qubit_splitting - low.effective_qubit_splitting ==
        doctest::Approx(kTwoPi * 5.843075281759e8).epsilon(1e-7));
  CHECK(high.energies(0) == doctest::Approx(-kTwoPi * 3.3616564947e9).epsilon(1e-8));
  CHECK(high.energies(4) == doctest::Approx(kTwoPi * 1.2855153391e10).epsilon(1e-8));

  // Dressing softens the splitting but keeps it well defined.
  CHECK(high.effective_qubit_splitting < high_site().omega_q);
  CHECK(high.effective_qubit_splitting > 0.4 * high_site().omega_q);

  const qpg::Operator x_high = qpg::project_hopping_operator(high);
  const qpg::Operator x_low = qpg::project_hopping_operator(low);
  CHECK(std::abs(x_high(0, 1)) == doctest::Approx(0.8320554284804).epsilon(1e-7));
  CHECK(std::abs(x_low(0, 1)) == doctest::Approx(0.7607840867852).epsilon(1e-7));
  CHECK(std::abs(x_high(0, 2)) == doctest::Approx(0.6707925667303).epsilon(1e-7));
  // Parity forbids 1<->2 and 0<->3 transitions.
  CHECK(std::abs(x_high(1, 2)) < 1e-9);
  CHECK(std::abs(x_high(0, 3)) < 1e-9);

  // Kept vectors stay orthonormal and (after gauging) real.
  const qpg::Operator gram = high.vectors.adjoint() * high.vectors;
  CHECK((gram - qpg::Operator::Identity(5, 5)).norm() < 1e-10);
  CHECK(high.vectors.imag().norm() < 1e-10);
}

TEST_CASE("truncation certificate flags an under-resolved oscillator") {
  qpg::QrmSite site = low_site(6);
  site.g = site.omega_c;  // ultrastrong coupling pushes weight past the cutoff
  CHECK_THROWS_AS(qpg::diagonalize_qrm(site, 4), qpg::TruncationNotConverged);
}

TEST_CASE("coupled hamiltonian is diagonal without drives and hermitian with them") {
  const qpg::QrmParams params = reduced_params();
  qpg::CoupledQrmSystem sys = qpg::make_single_gate_system(params);
  CHECK(qpg::product_dim(sys) == 64);

  const qpg::Operator bare = qpg::build_coupled_hamiltonian(sys, 0.0);
  const Eigen::VectorXd energies = qpg::product_energies(sys);
  qpg::Operator diag = qpg::Operator::Zero(64, 64);
  diag.diagonal() = energies.cast<qpg::Complex>();
  CHECK((bare - diag).norm() == 0.0);
  // Product energies add per site.
  CHECK(energies(0) ==
        doctest::Approx(sys.bases[0].energies(0) + 2.0 * sys.bases[1].energies(0))
            .epsilon(1e-14));

  qpg::HoppingDrive drive;
  drive.a = 0;
  drive.b = 2;
  drive.j = kTwoPi * 3.0e7;
  drive.omega_drive = kTwoPi * 5.8e8;
  drive.phi = 0.3;
  sys.drives.push_back(drive);
  const qpg::Operator h = qpg::build_coupled_hamiltonian(sys, 0.37e-9);
  CHECK((h - qpg::Operator(h.adjoint())).norm() < 1e-10 * h.norm());
  CHECK((h - diag).norm() > 0.0);

  // At cos(omega t + phi) = 0 the drive contributes nothing.
  sys.drives[0].phi = 0.5 * 3.14159265358979323846;
  const qpg::Operator quiet = qpg::build_coupled_hamiltonian(sys, 0.0);
  CHECK((quiet - diag).norm() < 1e-10 * drive.j);

  // Full default-scale register: 125 x 125 and still Hermitian.
  const qpg::CoupledQrmSystem full = qpg::make_single_gate_system();
  CHECK(qpg::product_dim(full) == 125);
  qpg::CoupledQrmSystem driven = full;
  driven.drives.push_back(drive);
  const qpg::Operator h_full = qpg::build_coupled_hamiltonian(driven, 1.3e-9);
  CHECK((h_full - qpg::Operator(h_full.adjoint())).norm() < 1e-10 * h_full.norm());
}

TEST_CASE("oversized product spaces are rejected") {
  const qpg::QrmEigenbasis basis = qpg::diagonalize_qrm(low_site(12), 7);
  qpg::CoupledQrmSystem sys;
  for (int k = 0; k < 4; ++k) {
    sys.sites.push_back(low_site(12));
    sys.bases.push_back(basis);  // 7^4 = 2401 exceeds the dense limit
  }
  CHECK_THROWS_AS(qpg::product_dim(sys), qpg::DimensionOverflow);
}

TEST_CASE("interaction stepper matches a brute-force lab-frame integration") {
  qpg::QrmParams params = reduced_params();
  params.kept_levels = 3;
  qpg::CoupledQrmSystem sys;
  sys.sites = {high_site(params.fock_cutoff), low_site(params.fock_cutoff)};
  sys.bases = {qpg::diagonalize_qrm(sys.sites[0], params.kept_levels),
               qpg::diagonalize_qrm(sys.sites[1], params.kept_levels)};

  qpg::HoppingDrive drive;
  drive.a = 0;
  drive.b = 1;
  drive.j = kTwoPi * 4.0e7;
  drive.omega_drive =
      sys.bases[0].effective_qubit_splitting - sys.bases[1].effective_qubit_splitting;
  drive.phi = 0.0;

  const double horizon = 3.0e-9;
  const Eigen::Index dim = qpg::product_dim(sys);

  // Interaction-picture propagation with coarse steps.
  qpg::Operator block = qpg::Operator::Zero(dim, 1);
  block(3, 0) = 1.0;  // levels (1, 0)
  qpg::QrmSimOptions opts;
  opts.dt = 0.25e-9;
  qpg::propagate_window(sys, qpg::DriveWindow{horizon, {drive}}, 0.0, opts, block);
  const Eigen::VectorXd energies = qpg::product_energies(sys);
  qpg::State lab_from_ip(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    lab_from_ip(k) =
        std::exp(qpg::Complex(0.0, -energies(k) * horizon)) * block(k, 0);
  }

  // Reference: fourth-order commutator-free integration of the lab-frame
  // Hamiltonian with picosecond-scale steps.
  qpg::CoupledQrmSystem driven = sys;
  driven.drives = {drive};
  const auto h_of_t = [&](double t) { return qpg::build_coupled_hamiltonian(driven, t); };
  const qpg::Operator u_ref = qpg::propagate_time_dependent(h_of_t, 0.0, horizon, 12000);
  qpg::State psi0 = qpg::State::Zero(dim);
  psi0(3) = 1.0;
  const qpg::State lab_ref = u_ref * psi0;

  // The 5.7e-8 residual is the stepper's second-order truncation at this
  // deliberately strong probe amplitude; production drives are far weaker.
  CHECK(qpg::state_fidelity(lab_ref, lab_from_ip) > 1.0 - 2e-7);
}

TEST_CASE("stepper fidelities are stable under halving and converge when resolved") {
  qpg::QrmParams params = reduced_params();
  params.kept_levels = 3;
  qpg::CoupledQrmSystem sys;
  sys.sites = {high_site(params.fock_cutoff), low_site(params.fock_cutoff)};
  sys.bases = {qpg::diagonalize_qrm(sys.sites[0], params.kept_levels),
               qpg::diagonalize_qrm(sys.sites[1], params.kept_levels)};

  qpg::HoppingDrive drive;
  drive.a = 0;
  drive.b = 1;
  drive.j = kTwoPi * 6.3e6;
  drive.omega_drive =
      sys.bases[0].effective_qubit_splitting - sys.bases[1].effective_qubit_splitting;

  const double horizon = 1.25e-7;
  const Eigen::Index dim = qpg::product_dim(sys);
  const auto run = [&](double dt) {
    qpg::Operator block = qpg::Operator::Zero(dim, 1);
    block(3, 0) = 1.0;
    qpg::QrmSimOptions opts;
    opts.dt = dt;
    qpg::propagate_window(sys, qpg::DriveWindow{horizon, {drive}}, 0.0, opts, block);
    return qpg::State(block.col(0));
  };

  // At the default nanosecond step the integrator carries a small secular
  // offset that is stable under halving (the 1e-5 reproducibility contract
  // on fidelities)...
  CHECK(1.0 - qpg::state_fidelity(run(1.0e-9), run(0.5e-9)) < 1e-5);
  // ...and once the step resolves the drive period the error vanishes.
  CHECK(1.0 - qpg::state_fidelity(run(0.0625e-9), run(0.015625e-9)) < 1e-8);
}

TEST_CASE("free windows are exact identities") {
  const qpg::QrmParams params = reduced_params();
  qpg::CoupledQrmSystem sys = qpg::make_single_gate_system(params);
  const Eigen::Index dim = qpg::product_dim(sys);
  qpg::Operator block(dim, 1);
  for (Eigen::Index k = 0; k < dim; ++k) {
    block(k, 0) = qpg::Complex(std::cos(0.1 * k), std::sin(0.2 * k));
  }
  block.col(0).normalize();
  const qpg::Operator before = block;
  qpg::propagate_window(sys, qpg::DriveWindow{2.5e-7, {}}, 1.0e-8, {}, block);
  CHECK((block - before).norm() == 0.0);

  // Mean bare energy is conserved to the last bit across the idle window.
  const Eigen::VectorXd energies = qpg::product_energies(sys);
  double drift = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    drift += energies(k) * (std::norm(block(k, 0)) - std::norm(before(k, 0)));
  }
  CHECK(drift == 0.0);
}

TEST_CASE("drive calibration reproduces the exchange half-period") {
  const qpg::QrmParams params = reduced_params();
  const qpg::CoupledQrmSystem sys = qpg::make_single_gate_system(params);
  const double target = qpg::kOmegaDefault;
  const double goal = 3.14159265358979323846 / target;  // 0.25 microseconds

  // Parametric pair: distinct sites, drive at the splitting difference.
  const qpg::HoppingDrive parametric = qpg::calibrate_drive(sys, 0, 1, target);
  CHECK(parametric.omega_drive ==
        doctest::Approx(sys.bases[0].effective_qubit_splitting -
                        sys.bases[1].effective_qubit_splitting)
            .epsilon(1e-12));
  CHECK(parametric.j > 0.0);
  CHECK(parametric.phi == 0.0);  // both transition elements are negative
  const double measured = qpg::measure_exchange_halfperiod(
      sys.sites[0], sys.sites[1], params.kept_levels, parametric, target, {});
  CHECK(measured == doctest::Approx(goal).epsilon(2e-3));

  // Identical sites: a static coupling with zero drive frequency.
  const qpg::HoppingDrive static_drive = qpg::calibrate_drive(sys, 1, 2, target);
  CHECK(static_drive.omega_drive == 0.0);
  const double measured_static = qpg::measure_exchange_halfperiod(
      sys.sites[1], sys.sites[2], params.kept_levels, static_drive, target, {});
  CHECK(measured_static == doctest::Approx(goal).epsilon(2e-3));
}

TEST_CASE("calibration handles zero targets and rejects off-resonant drives") {
  const qpg::QrmParams params = reduced_params();
  const qpg::CoupledQrmSystem sys = qpg::make_single_gate_system(params);

  const qpg::HoppingDrive off = qpg::calibrate_drive(sys, 0, 1, 0.0);
  CHECK(off.j == 0.0);
  CHECK(off.calibrated_target == 0.0);

  // Forcing the drive far off resonance leaves no transfer peak to find.
  const double gap = sys.bases[0].effective_qubit_splitting -
                     sys.bases[1].effective_qubit_splitting;
  CHECK_THROWS_AS(
      qpg::calibrate_drive(sys, 0, 1, qpg::kOmegaDefault, {}, 0.3 * gap),
      qpg::CalibrationFailed);
}

TEST_CASE("logical configurations follow the pair encoding") {
  const auto three = qpg::logical_site_configs(3);
  REQUIRE(three.size() == 2);
  CHECK(three[0] == std::vector<int>{0, 1, 0});
  CHECK(three[1] == std::vector<int>{0, 0, 1});

  const auto four = qpg::logical_site_configs(4);
  REQUIRE(four.size() == 4);
  CHECK(four[0] == std::vector<int>{1, 0, 1, 0});
  CHECK(four[1] == std::vector<int>{1, 0, 0, 1});
  CHECK(four[2] == std::vector<int>{0, 1, 1, 0});
  CHECK(four[3] == std::vector<int>{0, 1, 0, 1});

  const auto five = qpg::logical_site_configs(5);
  REQUIRE(five.size() == 4);
  CHECK(five[0] == std::vector<int>{0, 1, 0, 1, 0});
  CHECK(five[3] == std::vector<int>{0, 0, 1, 0, 1});

  CHECK_THROWS_AS(qpg::logical_site_configs(2), qpg::DimensionMismatch);
}

TEST_CASE("idle schedules leave the logical space untouched") {
  const qpg::QrmParams params = reduced_params();
  const qpg::CoupledQrmSystem sys = qpg::make_single_gate_system(params);
  qpg::GateSchedule idle;
  idle.segments.push_back(qpg::PulseSegment{qpg::SpinModel{3, {}}, 1.0e-7, -1});
  idle.label = "idle";

  const qpg::PhysicalGateResult result = qpg::simulate_physical_gate(sys, idle, 3, 77);
  CHECK(result.mean_fidelity == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(result.min_fidelity == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(result.mean_leakage == 0.0);
  CHECK((result.logical_matrix - qpg::Operator::Identity(2, 2)).norm() == 0.0);
}

TEST_CASE("physical z gate matches the exact layer") {
  const qpg::QrmParams params = reduced_params();
  const qpg::PhysicalGateResult result =
      qpg::simulate_catalog_gate(qpg::GateKind::Z, 5, 11, params);
  CHECK(result.mean_fidelity >= 0.99);
  CHECK(result.min_fidelity >= 0.99);
  CHECK(result.mean_leakage < 1e-3);
  REQUIRE(result.per_trial.size() == 5);

  // Bitwise deterministic for a fixed seed.
  const qpg::PhysicalGateResult again =
      qpg::simulate_catalog_gate(qpg::GateKind::Z, 5, 11, params);
  for (int k = 0; k < 5; ++k) {
    CHECK(result.per_trial[k] == again.per_trial[k]);
  }
}

TEST_CASE("physical two-qubit phase gate matches the exact layer") {
  const qpg::QrmParams params = reduced_params();
  const qpg::PhysicalGateResult result =
      qpg::simulate_catalog_gate(qpg::GateKind::ZZ_PHASE, 3, 23, params);
  CHECK(result.mean_fidelity >= 0.99);
  CHECK(result.mean_leakage < 1e-3);
}

TEST_CASE("resonant leakage channels trip the leakage guard") {
  const qpg::QrmParams params = reduced_params();
  qpg::CoupledQrmSystem sys = qpg::make_single_gate_system(params);

  // Aim the pair (0, 2) drive at the two-photon-like channel that promotes
  // site 0 to its second level while exciting site 2, instead of the
  // qubit-exchange resonance.
  const Eigen::VectorXd& ea = sys.bases[0].energies;
  const Eigen::VectorXd& eb = sys.bases[2].energies;
  qpg::HoppingDrive bad;
  bad.a = 0;
  bad.b = 2;
  bad.j = kTwoPi * 4.0e6;  // quarter-period leak rotation over the pulse
  bad.omega_drive = (ea(2) - ea(0)) + (eb(1) - eb(0));
  bad.phi = 0.0;
  bad.calibrated_target = qpg::kOmegaDefault;
  sys.drives.push_back(bad);

  const qpg::GateSchedule schedule = qpg::schedule_u1(0.0);
  CHECK_THROWS_AS(qpg::simulate_physical_gate(sys, schedule, 4, 5), qpg::LeakageExceeded);
}
