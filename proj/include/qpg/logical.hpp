// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qpg/numerics.hpp"
#include "qpg/spin.hpp"

namespace qpg {

// Default exchange strength 2*pi*2 MHz used by all schedule builders.
inline constexpr double kOmegaDefault = 2.0 * 3.14159265358979323846 * 2.0e6;

// One piecewise-constant pulse. The realized propagator is
// exp(+i * sign * H * duration): sign = -1 is ordinary evolution
// exp(-iHt), sign = +1 realizes the inverse (a pi phase shift of the
// drives, i.e. a negated coupling Hamiltonian).
struct PulseSegment {
  SpinModel model;
  double duration = 0.0;  // seconds
  int sign = -1;
};

// Time-ordered pulse list; segments[0] is applied first.
struct GateSchedule {
  std::vector<PulseSegment> segments;
  std::string label;

  int num_qubits() const;
  double total_duration() const;
};

// Two physical qubits per logical qubit: |0>_L = |0>|1>, |1>_L = |1>|0>
// on each (first, second) pair. Physical qubits not covered by a pair are
// auxiliary.
struct LogicalEncoding {
  std::vector<std::pair<int, int>> pairs;
};

// The Hamiltonian whose exp(-iHt) realizes the segment (sign folded in).
Operator segment_generator(const PulseSegment& segment);

// Single lambda pulse: H1(theta, omega) for tau1 = pi/omega.
GateSchedule schedule_u1(double theta, double omega = kOmegaDefault);

// Geometric phase gate: conjugated double-lambda sequence
// [H2, pi/(4 omega12)], [H1(0), tau1], [H1(theta), tau1],
// [H2, pi/(4 omega12), inverted]; total duration 2 tau1 + pi/(2 omega12).
GateSchedule schedule_u2(double theta, double omega = kOmegaDefault,
                         double omega12 = kOmegaDefault);

// Two-logical-qubit analog of schedule_u2 built from H3/H4 on four qubits.
GateSchedule schedule_u4(double theta_prime, double omega_prime = kOmegaDefault,
                         double omega34 = kOmegaDefault);

// Product of segment propagators in time order (later segments multiply on
// the left). Throws DimensionMismatch on inconsistent segment dimensions.
Operator synthesize(const GateSchedule& schedule);

// Propagator from t = 0 to absolute time t (clamped to the total duration),
// splitting the final segment if t falls inside it.
Operator propagate_schedule(const GateSchedule& schedule, double t);

// Logical basis states embedded in the full physical register, ordered by
// logical bitstring (pair 0 = most significant logical bit). Auxiliary
// qubits are fixed in `ancilla_state` (dimension 2^#aux, required iff
// auxiliary qubits exist).
std::vector<State> logical_basis_states(const LogicalEncoding& enc, int num_qubits,
                                        const std::optional<State>& ancilla_state);

// <L_i| U |L_j> with auxiliary qubits fixed; throws LeakageDetected if the
// projected block deviates from unitarity by more than leak_tol.
Operator project_to_logical(const Operator& u, const LogicalEncoding& enc,
                            const std::optional<State>& ancilla_state,
                            double leak_tol = 1e-8);

// Single auxiliary qubit states: ground |1> and excited |0>.
State ancilla_ground();
State ancilla_excited();

// Canonical register layouts: 3 qubits = one logical qubit on (1, 2) with
// auxiliary 0; 4 qubits = logical pairs (0, 1) and (2, 3); 5 qubits =
// pairs (1, 2) and (3, 4) sharing auxiliary 0. Throws DimensionMismatch
// for other register sizes.
LogicalEncoding default_encoding(int num_qubits);

// Ground auxiliary state for the canonical layouts (empty when the layout
// has no auxiliary qubit).
std::optional<State> default_ancilla(int num_qubits);

enum class GateKind { X, Z, H, S, T, ZZ_PHASE, CZ };

struct StandardGate {
  GateKind kind;
  double parameter;      // theta or theta' in radians
  Complex global_phase;  // |global_phase| = 1
};

// Schedule builder frequencies for catalog gates.
struct GateParams {
  double omega = kOmegaDefault;
  double omega12 = kOmegaDefault;
  double omega_prime = kOmegaDefault;
  double omega34 = kOmegaDefault;
};

// A catalog gate together with its pulse schedule, DFS encoding, required
// auxiliary state, and expected logical unitary. The defining identity is
// global_phase * project_to_logical(synthesize(schedule)) == expected.
struct CatalogEntry {
  StandardGate gate;
  GateSchedule schedule;
  LogicalEncoding encoding;
  std::optional<State> ancilla;
  Operator expected;
};

// Table of supported gates: X, Z, H (single lambda pulse), S, T (geometric
// phase gate), ZZ_PHASE (two-qubit phase gate), CZ (two-qubit phase gate
// composed with S on each logical qubit, sharing one auxiliary qubit).
CatalogEntry gate_catalog(GateKind kind, const GateParams& params = {});

std::vector<GateKind> catalog_kinds();
std::string gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(const std::string& name);  // throws UnknownGate

// Convenience: projected logical matrix of U for a catalog entry.
Operator project_catalog(const CatalogEntry& entry, const Operator& u,
                         double leak_tol = 1e-8);

// Relabel segment qubits through `qubit_map` (old index -> new index) on a
// register of new_num_qubits.
GateSchedule remap_schedule(const GateSchedule& schedule, const std::vector<int>& qubit_map,
                            int new_num_qubits, const std::string& label);

}  // namespace qpg
