// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#include "qpg/logical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "qpg/errors.hpp"

namespace qpg {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_sign(int sign) {
  if (sign != 1 && sign != -1) {
    throw DimensionMismatch("segment sign must be +1 or -1");
  }
}

}  // namespace

int GateSchedule::num_qubits() const {
  return segments.empty() ? 0 : segments.front().model.num_qubits;
}

double GateSchedule::total_duration() const {
  double total = 0.0;
  for (const PulseSegment& s : segments) {
    total += s.duration;
  }
  return total;
}

Operator segment_generator(const PulseSegment& segment) {
  validate_sign(segment.sign);
  // exp(+i sign H t) = exp(-i (-sign H) t)
  return static_cast<double>(-segment.sign) * build_xy_hamiltonian(segment.model);
}

GateSchedule schedule_u1(double theta, double omega) {
  GateSchedule s;
  s.label = "U1";
  s.segments = {{h1_params(theta, omega), kPi / omega, -1}};
  return s;
}

GateSchedule schedule_u2(double theta, double omega, double omega12) {
  const double tau1 = kPi / omega;
  const double tau_conj = kPi / (4.0 * omega12);
  GateSchedule s;
  s.label = "U2";
  s.segments = {
      {h2_params(omega12), tau_conj, -1},
      {h1_params(0.0, omega), tau1, -1},
      {h1_params(theta, omega), tau1, -1},
      {h2_params(omega12), tau_conj, +1},
  };
  return s;
}

GateSchedule schedule_u4(double theta_prime, double omega_prime, double omega34) {
  const double tau1 = kPi / omega_prime;
  const double tau_conj = kPi / (4.0 * omega34);
  GateSchedule s;
  s.label = "U4";
  s.segments = {
      {h4_params(omega34), tau_conj, -1},
      {h3_params(0.0, omega_prime), tau1, -1},
      {h3_params(theta_prime, omega_prime), tau1, -1},
      {h4_params(omega34), tau_conj, +1},
  };
  return s;
}

Operator synthesize(const GateSchedule& schedule) {
  if (schedule.segments.empty()) {
    throw DimensionMismatch("schedule has no segments");
  }
  const int n = schedule.num_qubits();
  const Eigen::Index dim = Eigen::Index(1) << n;
  Operator u = Operator::Identity(dim, dim);
  for (const PulseSegment& seg : schedule.segments) {
    if (seg.model.num_qubits != n) {
      throw DimensionMismatch("segments act on different register sizes");
    }
    u = expm_hermitian(segment_generator(seg), seg.duration) * u;
  }
  return u;
}

Operator propagate_schedule(const GateSchedule& schedule, double t) {
  if (schedule.segments.empty()) {
    throw DimensionMismatch("schedule has no segments");
  }
  const int n = schedule.num_qubits();
  const Eigen::Index dim = Eigen::Index(1) << n;
  Operator u = Operator::Identity(dim, dim);
  double remaining = std::max(t, 0.0);
  for (const PulseSegment& seg : schedule.segments) {
    if (seg.model.num_qubits != n) {
      throw DimensionMismatch("segments act on different register sizes");
    }
    const double dt = std::min(remaining, seg.duration);
    if (dt > 0.0) {
      u = expm_hermitian(segment_generator(seg), dt) * u;
    }
    remaining -= dt;
    if (remaining <= 0.0) {
      break;
    }
  }
  return u;
}

std::vector<State> logical_basis_states(const LogicalEncoding& enc, int num_qubits,
                                        const std::optional<State>& ancilla_state) {
  const int k = static_cast<int>(enc.pairs.size());
  if (k < 1) {
    throw DimensionMismatch("encoding needs at least one pair");
  }
  std::set<int> used;
  for (const auto& [a, b] : enc.pairs) {
    for (int q : {a, b}) {
      if (q < 0 || q >= num_qubits) {
        throw IndexOutOfRange("encoded qubit index outside register");
      }
      if (!used.insert(q).second) {
        throw IndexOutOfRange("physical qubit used twice in encoding");
      }
    }
  }
  std::vector<int> aux;
  for (int q = 0; q < num_qubits; ++q) {
    if (!used.count(q)) {
      aux.push_back(q);
    }
  }
  const int n_aux = static_cast<int>(aux.size());
  if (n_aux > 0) {
    if (!ancilla_state) {
      throw DimensionMismatch("auxiliary qubits present but no auxiliary state given");
    }
    if (ancilla_state->size() != (Eigen::Index(1) << n_aux)) {
      throw DimensionMismatch("auxiliary state dimension mismatch");
    }
  }

  const Eigen::Index dim = Eigen::Index(1) << num_qubits;
  const Eigen::Index logical_dim = Eigen::Index(1) << k;
  const Eigen::Index aux_dim = Eigen::Index(1) << n_aux;
  std::vector<State> basis;
  basis.reserve(logical_dim);
  for (Eigen::Index b = 0; b < logical_dim; ++b) {
    State v = State::Zero(dim);
    for (Eigen::Index a = 0; a < aux_dim; ++a) {
      const Complex amp = (n_aux > 0) ? (*ancilla_state)[a] : Complex(1.0, 0.0);
      Eigen::Index idx = 0;
      for (int p = 0; p < k; ++p) {
        const Eigen::Index beta = (b >> (k - 1 - p)) & 1;
        idx |= beta << (num_qubits - 1 - enc.pairs[p].first);
        idx |= (1 - beta) << (num_qubits - 1 - enc.pairs[p].second);
      }
      for (int q = 0; q < n_aux; ++q) {
        const Eigen::Index bit = (a >> (n_aux - 1 - q)) & 1;
        idx |= bit << (num_qubits - 1 - aux[q]);
      }
      v[idx] += amp;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

Operator project_to_logical(const Operator& u, const LogicalEncoding& enc,
                            const std::optional<State>& ancilla_state, double leak_tol) {
  if (u.rows() != u.cols()) {
    throw DimensionMismatch("propagator must be square");
  }
  int num_qubits = 0;
  while ((Eigen::Index(1) << num_qubits) < u.rows()) {
    ++num_qubits;
  }
  if ((Eigen::Index(1) << num_qubits) != u.rows()) {
    throw DimensionMismatch("propagator dimension is not a power of two");
  }
  const std::vector<State> basis = logical_basis_states(enc, num_qubits, ancilla_state);
  const Eigen::Index l = static_cast<Eigen::Index>(basis.size());
  Operator m(l, l);
  for (Eigen::Index j = 0; j < l; ++j) {
    const State w = u * basis[j];
    for (Eigen::Index i = 0; i < l; ++i) {
      m(i, j) = basis[i].dot(w);
    }
  }
  const double residual = unitarity_residual(m);
  if (residual > leak_tol) {
    throw LeakageDetected("projected block unitarity residual " +
                          std::to_string(residual) + " exceeds " +
                          std::to_string(leak_tol));
  }
  return m;
}

State ancilla_ground() {
  State v(2);
  v << Complex(0.0, 0.0), Complex(1.0, 0.0);
  return v;
}

State ancilla_excited() {
  State v(2);
  v << Complex(1.0, 0.0), Complex(0.0, 0.0);
  return v;
}

LogicalEncoding default_encoding(int num_qubits) {
  switch (num_qubits) {
    case 3:
      return LogicalEncoding{{{1, 2}}};
    case 4:
      return LogicalEncoding{{{0, 1}, {2, 3}}};
    case 5:
      return LogicalEncoding{{{1, 2}, {3, 4}}};
    default:
      throw DimensionMismatch("canonical layouts cover 3, 4, or 5 qubits");
  }
}

std::optional<State> default_ancilla(int num_qubits) {
  const LogicalEncoding enc = default_encoding(num_qubits);
  if (2 * static_cast<int>(enc.pairs.size()) == num_qubits) {
    return std::nullopt;
  }
  return ancilla_ground();
}

GateSchedule remap_schedule(const GateSchedule& schedule, const std::vector<int>& qubit_map,
                            int new_num_qubits, const std::string& label) {
  GateSchedule out;
  out.label = label;
  for (const PulseSegment& seg : schedule.segments) {
    if (qubit_map.size() < static_cast<std::size_t>(seg.model.num_qubits)) {
      throw IndexOutOfRange("qubit map smaller than source register");
    }
    PulseSegment mapped;
    mapped.duration = seg.duration;
    mapped.sign = seg.sign;
    mapped.model.num_qubits = new_num_qubits;
    for (const XYCoupling& c : seg.model.couplings) {
      mapped.model.couplings.push_back({qubit_map[c.m], qubit_map[c.n], c.strength});
    }
    validate_spin_model(mapped.model);
    out.segments.push_back(std::move(mapped));
  }
  return out;
}

std::vector<GateKind> catalog_kinds() {
  return {GateKind::X, GateKind::Z,  GateKind::H,       GateKind::S,
          GateKind::T, GateKind::ZZ_PHASE, GateKind::CZ};
}

std::string gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::X:
      return "X";
    case GateKind::Z:
      return "Z";
    case GateKind::H:
      return "H";
    case GateKind::S:
      return "S";
    case GateKind::T:
      return "T";
    case GateKind::ZZ_PHASE:
      return "ZZ_PHASE";
    case GateKind::CZ:
      return "CZ";
  }
  throw UnknownGate("unhandled gate kind");
}

GateKind gate_kind_from_name(const std::string& name) {
  for (GateKind k : catalog_kinds()) {
    if (gate_kind_name(k) == name) {
      return k;
    }
  }
  throw UnknownGate("unknown gate '" + name + "'");
}

CatalogEntry gate_catalog(GateKind kind, const GateParams& params) {
  const Complex i1(0.0, 1.0);
  CatalogEntry e;
  e.gate.kind = kind;
  switch (kind) {
    case GateKind::X: {
      e.gate.parameter = kPi / 2.0;
      e.gate.global_phase = Complex(-1.0, 0.0);
      e.schedule = schedule_u1(e.gate.parameter, params.omega);
      e.schedule.label = "X";
      e.expected = pauli_x();
      break;
    }
    case GateKind::Z: {
      e.gate.parameter = 0.0;
      e.gate.global_phase = Complex(1.0, 0.0);
      e.schedule = schedule_u1(e.gate.parameter, params.omega);
      e.schedule.label = "Z";
      e.expected = pauli_z();
      break;
    }
    case GateKind::H: {
      e.gate.parameter = -kPi / 4.0;
      e.gate.global_phase = Complex(1.0, 0.0);
      e.schedule = schedule_u1(e.gate.parameter, params.omega);
      e.schedule.label = "H";
      e.expected = (pauli_z() + pauli_x()) / std::sqrt(2.0);
      break;
    }
    case GateKind::S: {
      e.gate.parameter = kPi / 4.0;
      e.gate.global_phase = std::exp(i1 * (kPi / 4.0));
      e.schedule = schedule_u2(e.gate.parameter, params.omega, params.omega12);
      e.schedule.label = "S";
      e.expected = Operator::Zero(2, 2);
      e.expected(0, 0) = 1.0;
      e.expected(1, 1) = i1;
      break;
    }
    case GateKind::T: {
      e.gate.parameter = kPi / 8.0;
      e.gate.global_phase = std::exp(i1 * (kPi / 8.0));
      e.schedule = schedule_u2(e.gate.parameter, params.omega, params.omega12);
      e.schedule.label = "T";
      e.expected = Operator::Zero(2, 2);
      e.expected(0, 0) = 1.0;
      e.expected(1, 1) = std::exp(i1 * (kPi / 4.0));
      break;
    }
    case GateKind::ZZ_PHASE: {
      e.gate.parameter = -kPi / 4.0;
      e.gate.global_phase = Complex(1.0, 0.0);
      e.schedule = schedule_u4(e.gate.parameter, params.omega_prime, params.omega34);
      e.schedule.label = "ZZ_PHASE";
      e.expected = u4_analytic(e.gate.parameter);
      break;
    }
    case GateKind::CZ: {
      e.gate.parameter = -kPi / 4.0;
      e.gate.global_phase = std::exp(i1 * (kPi / 4.0));
      // Two-qubit phase stage on qubits 1..4, then the S-gate stage on each
      // encoded pair through the shared auxiliary qubit 0.
      const GateSchedule u4_stage =
          remap_schedule(schedule_u4(e.gate.parameter, params.omega_prime, params.omega34),
                         {1, 2, 3, 4}, 5, "CZ");
      const GateSchedule s_gate = schedule_u2(kPi / 4.0, params.omega, params.omega12);
      const GateSchedule s_first = remap_schedule(s_gate, {0, 1, 2}, 5, "CZ");
      const GateSchedule s_second = remap_schedule(s_gate, {0, 3, 4}, 5, "CZ");
      e.schedule.label = "CZ";
      for (const GateSchedule* part : {&u4_stage, &s_first, &s_second}) {
        e.schedule.segments.insert(e.schedule.segments.end(), part->segments.begin(),
                                   part->segments.end());
      }
      e.expected = Operator::Identity(4, 4);
      e.expected(3, 3) = -1.0;
      break;
    }
  }
  switch (kind) {
    case GateKind::X:
    case GateKind::Z:
    case GateKind::H:
    case GateKind::S:
    case GateKind::T:
      e.encoding.pairs = {{1, 2}};
      e.ancilla = ancilla_ground();
      break;
    case GateKind::ZZ_PHASE:
      e.encoding.pairs = {{0, 1}, {2, 3}};
      e.ancilla = std::nullopt;
      break;
    case GateKind::CZ:
      e.encoding.pairs = {{1, 2}, {3, 4}};
      e.ancilla = ancilla_ground();
      break;
  }
  return e;
}

Operator project_catalog(const CatalogEntry& entry, const Operator& u, double leak_tol) {
  return project_to_logical(u, entry.encoding, entry.ancilla, leak_tol);
}

}  // namespace qpg
