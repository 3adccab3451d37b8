// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#include "qpg/protect.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qpg/errors.hpp"
#include "qpg/spin.hpp"

namespace qpg {

namespace {

constexpr double kPi = std::numbers::pi;

// Register hosting the encoding: auxiliary qubits (outside all pairs) are
// fixed in their ground state.
struct EncodedRegister {
  int num_qubits = 0;
  std::vector<int> pair_qubits;
  std::vector<State> basis;  // logical basis states in the full register
};

EncodedRegister encoded_register(const LogicalEncoding& enc) {
  EncodedRegister reg;
  for (const auto& [a, b] : enc.pairs) {
    reg.num_qubits = std::max({reg.num_qubits, a + 1, b + 1});
    reg.pair_qubits.push_back(a);
    reg.pair_qubits.push_back(b);
  }
  const int n_aux = reg.num_qubits - 2 * static_cast<int>(enc.pairs.size());
  std::optional<State> aux;
  if (n_aux > 0) {
    State ground = State::Zero(Eigen::Index(1) << n_aux);
    ground[(Eigen::Index(1) << n_aux) - 1] = 1.0;  // all-|1> (ground)
    aux = ground;
  }
  reg.basis = logical_basis_states(enc, reg.num_qubits, aux);
  return reg;
}

// Six-state grid per logical qubit, tensored over logical qubits.
std::vector<State> logical_state_grid(int logical_qubits) {
  const Complex i1(0.0, 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<State> single;
  for (int k = 0; k < 6; ++k) {
    State v(2);
    switch (k) {
      case 0: v << 1, 0; break;
      case 1: v << 0, 1; break;
      case 2: v << r, r; break;
      case 3: v << r, -r; break;
      case 4: v << r, r * i1; break;
      default: v << r, -r * i1; break;
    }
    single.push_back(v);
  }
  std::vector<State> grid = single;
  for (int q = 1; q < logical_qubits; ++q) {
    std::vector<State> next;
    for (const State& a : grid) {
      for (const State& b : single) {
        State v(a.size() * 2);
        for (Eigen::Index i = 0; i < a.size(); ++i) {
          v[2 * i] = a[i] * b[0];
          v[2 * i + 1] = a[i] * b[1];
        }
        next.push_back(std::move(v));
      }
    }
    grid = std::move(next);
  }
  return grid;
}

State embed_logical(const EncodedRegister& reg, const State& coeffs) {
  State full = State::Zero(reg.basis.front().size());
  for (Eigen::Index b = 0; b < coeffs.size(); ++b) {
    full += coeffs[b] * reg.basis[b];
  }
  return full;
}

double max_dephasing_infidelity(const LogicalEncoding& enc, const Operator& generator,
                                double phi, const std::vector<State>& coeff_states) {
  const EncodedRegister reg = encoded_register(enc);
  const Operator d = expm_hermitian(generator, phi / 2.0);
  double worst = 0.0;
  for (const State& c : coeff_states) {
    const State psi = embed_logical(reg, c);
    const State mapped = d * psi;
    worst = std::max(worst, 1.0 - state_fidelity(psi, mapped));
  }
  return worst;
}

}  // namespace

Subspace subspace_from_kets(const std::vector<Eigen::Index>& kets, Eigen::Index dim) {
  Subspace s;
  s.basis_kets = kets;
  s.projector = Operator::Zero(dim, dim);
  for (Eigen::Index k : kets) {
    if (k < 0 || k >= dim) {
      throw IndexOutOfRange("basis ket outside space");
    }
    s.projector(k, k) = 1.0;
  }
  return s;
}

Subspace s0_subspace() {
  return subspace_from_kets({1, 2}, 8);
}

Subspace s1_subspace() {
  return subspace_from_kets({5, 6}, 8);
}

DecouplingGroup make_decoupling_group(int num_qubits) {
  const Eigen::Index dim = Eigen::Index(1) << num_qubits;
  DecouplingGroup g;
  g.elements[0] = Operator::Identity(dim, dim);
  g.elements[1] = tensor_power(pauli_x(), num_qubits);
  g.elements[2] = tensor_power(pauli_y(), num_qubits);
  g.elements[3] = tensor_power(pauli_z(), num_qubits);
  return g;
}

double check_subspace_invariance(const Operator& u, const Subspace& s) {
  if (u.rows() != s.projector.rows()) {
    throw DimensionMismatch("propagator and subspace dimensions differ");
  }
  const Operator outside =
      (Operator::Identity(u.rows(), u.cols()) - s.projector) * u * s.projector;
  return outside.norm();
}

double check_parallel_transport(const GateSchedule& schedule, const Subspace& s,
                                int samples, const Operator* extra_term) {
  if (samples < 2) {
    throw DimensionMismatch("parallel-transport check needs at least two samples");
  }
  if (schedule.segments.empty()) {
    throw DimensionMismatch("schedule has no segments");
  }
  const Eigen::Index dim = Eigen::Index(1) << schedule.num_qubits();
  if (s.projector.rows() != dim) {
    throw DimensionMismatch("subspace dimension does not match the schedule");
  }
  Operator u = Operator::Identity(dim, dim);
  double worst = 0.0;
  for (const PulseSegment& seg : schedule.segments) {
    Operator h = segment_generator(seg);
    if (extra_term != nullptr) {
      if (extra_term->rows() != dim || extra_term->cols() != dim) {
        throw DimensionMismatch("extra term dimension does not match the schedule");
      }
      h += *extra_term;
    }
    const double h_norm = h.norm();
    const double scale = (h_norm > 0.0) ? h_norm : 1.0;
    const double dt = seg.duration / (samples - 1);
    const Operator step = expm_hermitian(h, dt);
    for (int k = 0; k < samples; ++k) {
      if (k > 0) {
        u = step * u;
      }
      const Operator p = u * s.projector * u.adjoint();
      worst = std::max(worst, (p * h * p).norm() / scale);
    }
  }
  return worst;
}

std::array<double, 4> dd_commutators(const Operator& h, const DecouplingGroup& group) {
  std::array<double, 4> norms{};
  for (int j = 0; j < 4; ++j) {
    const Operator& g = group.elements[j];
    if (g.rows() != h.rows()) {
      throw DimensionMismatch("group element and Hamiltonian dimensions differ");
    }
    norms[j] = (h * g - g * h).norm();
  }
  return norms;
}

DdCycleResult simulate_dd_cycle(const Operator& h_sys, const Operator& h_err, double tau,
                                const DecouplingGroup& group) {
  if (h_sys.rows() != h_err.rows()) {
    throw DimensionMismatch("system and error Hamiltonian dimensions differ");
  }
  const Operator h_tot = h_sys + h_err;
  const Operator e_quarter = expm_hermitian(h_tot, tau / 4.0);
  Operator u_dd = Operator::Identity(h_sys.rows(), h_sys.cols());
  for (const Operator& g : group.elements) {
    u_dd = g.adjoint() * e_quarter * g * u_dd;
  }
  const Operator u_free = expm_hermitian(h_tot, tau);
  const Operator target = expm_hermitian(h_sys, tau);
  DdCycleResult r;
  r.fidelity_with_dd = process_fidelity(target, u_dd);
  r.fidelity_without_dd = process_fidelity(target, u_free);
  r.error_amplitude_with_dd = coherent_error_amplitude(target, u_dd);
  r.error_amplitude_without_dd = coherent_error_amplitude(target, u_free);
  return r;
}

DdSuppressionResult dd_suppression_slopes(int points) {
  if (points < 2) {
    throw DimensionMismatch("need at least two sweep points");
  }
  // One decoupling cycle of unit length; the gate drive is kept weak
  // (omega * tau = 2e-4) so the pulsed evolution stays deep in the
  // averaging regime across the whole error grid.
  const double tau = 1.0;
  const double omega = 2.0e-4;
  const Operator h_sys = build_xy_hamiltonian(h1_params(kPi / 2.0, omega));
  const Operator sz1 = embed_single_qubit(pauli_z(), 1, 3);
  const DecouplingGroup group = make_decoupling_group(3);
  DdSuppressionResult out;
  for (int k = 0; k < points; ++k) {
    const double y = 1.0e-3 * std::pow(100.0, static_cast<double>(k) / (points - 1));
    const Operator h_err = (y / tau) * sz1;
    const DdCycleResult r = simulate_dd_cycle(h_sys, h_err, tau, group);
    out.error_times.push_back(y);
    out.amplitude_with_dd.push_back(r.error_amplitude_with_dd);
    out.amplitude_without_dd.push_back(r.error_amplitude_without_dd);
  }
  out.slope_with_dd = fit_loglog_slope(out.error_times, out.amplitude_with_dd);
  out.slope_without_dd = fit_loglog_slope(out.error_times, out.amplitude_without_dd);
  return out;
}

double collective_dephasing_invariance(const LogicalEncoding& enc, double phi) {
  const EncodedRegister reg = encoded_register(enc);
  const Operator gen = total_sigma_z(reg.num_qubits, reg.pair_qubits);
  return max_dephasing_infidelity(enc, gen, phi,
                                  logical_state_grid(static_cast<int>(enc.pairs.size())));
}

double collective_dephasing_certificate(const LogicalEncoding& enc, int n_states,
                                        int n_phis, std::uint64_t seed) {
  const EncodedRegister reg = encoded_register(enc);
  const Operator gen = total_sigma_z(reg.num_qubits, reg.pair_qubits);
  const Eigen::Index logical_dim = Eigen::Index(1) << enc.pairs.size();
  std::vector<State> states;
  for (int s = 0; s < n_states; ++s) {
    states.push_back(haar_random_state(static_cast<int>(logical_dim), derive_seed(seed, s)));
  }
  std::mt19937_64 gen_phi(derive_seed(seed, 0x706869));  // independent magnitude stream
  std::uniform_real_distribution<double> mag(-1000.0, 1000.0);
  double worst = 0.0;
  for (int p = 0; p < n_phis; ++p) {
    const double phi = mag(gen_phi);
    worst = std::max(worst, max_dephasing_infidelity(enc, gen, phi, states));
  }
  return worst;
}

double single_qubit_dephasing_infidelity(const LogicalEncoding& enc, double phi, int qubit) {
  const EncodedRegister reg = encoded_register(enc);
  if (qubit < 0 || qubit >= reg.num_qubits) {
    throw IndexOutOfRange("dephased qubit outside register");
  }
  const Operator gen = embed_single_qubit(pauli_z(), qubit, reg.num_qubits);
  return max_dephasing_infidelity(enc, gen, phi,
                                  logical_state_grid(static_cast<int>(enc.pairs.size())));
}

}  // namespace qpg
