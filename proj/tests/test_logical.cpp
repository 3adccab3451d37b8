// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qpg/errors.hpp"
#include "qpg/logical.hpp"
#include "qpg/numerics.hpp"
#include "qpg/spin.hpp"

using namespace qpg;

namespace {
constexpr double kPi = std::numbers::pi;

LogicalEncoding one_pair_enc() {
  LogicalEncoding enc;
  enc.pairs = {{1, 2}};
  return enc;
}
}  // namespace

TEST_SUITE_BEGIN("logical");

TEST_CASE("single-pulse schedule has the expected duration and couplings") {
  const GateSchedule s = schedule_u1(0.0);
  REQUIRE(s.segments.size() == 1);
  CHECK(s.total_duration() == doctest::Approx(0.25e-6).epsilon(1e-12));
  CHECK(s.segments[0].sign == -1);
  // theta = 0 drives only the (auxiliary, second-pair-qubit) coupling.
  CHECK(s.segments[0].model.couplings[0].strength == doctest::Approx(0.0));
  CHECK(s.segments[0].model.couplings[1].strength == doctest::Approx(kOmegaDefault));
}

TEST_CASE("phase-gate schedule structure: conjugating segments and total duration") {
  const GateSchedule s = schedule_u2(kPi / 4.0);
  REQUIRE(s.segments.size() == 4);
  // 2 tau1 + pi / (2 omega12) = 0.5 us + 0.125 us.
  CHECK(s.total_duration() == doctest::Approx(0.625e-6).epsilon(1e-12));
  CHECK(s.segments[0].duration == doctest::Approx(0.0625e-6).epsilon(1e-12));
  CHECK(s.segments[0].sign == -1);
  CHECK(s.segments[3].sign == +1);
  // The theta = 0 pulse precedes the theta pulse.
  CHECK(s.segments[1].model.couplings[0].strength == doctest::Approx(0.0));
  CHECK(s.segments[2].model.couplings[0].strength ==
        doctest::Approx(kOmegaDefault * std::sin(kPi / 8.0)));
}

TEST_CASE("an empty-coupling segment synthesizes to the identity") {
  GateSchedule s;
  s.label = "idle";
  s.segments = {{SpinModel{3, {}}, 1.0e-6, -1}};
  CHECK(phase_aware_distance(synthesize(s), Operator::Identity(8, 8)) < 1e-12);
}

TEST_CASE("synthesized single pulse projects to the closed form across angles") {
  for (int k = 0; k < 50; ++k) {
    const double theta = -kPi + 2.0 * kPi * k / 49.0;
    const Operator u = synthesize(schedule_u1(theta));
    const Operator m1 = project_to_logical(u, one_pair_enc(), ancilla_ground());
    CHECK(phase_aware_distance(m1, u1_analytic(theta, 1)) < 1e-9);
  }
}

TEST_CASE("the excited auxiliary branch follows its own closed form") {
  for (double theta : {0.0, kPi / 4.0, -kPi / 3.0}) {
    const Operator u = synthesize(schedule_u1(theta));
    const Operator m0 = project_to_logical(u, one_pair_enc(), ancilla_excited());
    CHECK(phase_aware_distance(m0, u1_analytic(theta, 0)) < 1e-9);
  }
}

TEST_CASE("synthesized phase gate projects to the closed form across angles") {
  for (int k = 0; k < 50; ++k) {
    const double theta = -kPi + 2.0 * kPi * k / 49.0;
    const Operator u = synthesize(schedule_u2(theta));
    const Operator m1 = project_to_logical(u, one_pair_enc(), ancilla_ground());
    CHECK(phase_aware_distance(m1, u2_analytic(theta, 1)) < 1e-9);
  }
}

TEST_CASE("synthesized two-qubit phase gate projects to the closed form") {
  LogicalEncoding enc;
  enc.pairs = {{0, 1}, {2, 3}};
  for (int k = 0; k < 50; ++k) {
    const double theta = -kPi + 2.0 * kPi * k / 49.0;
    const Operator u = synthesize(schedule_u4(theta));
    const Operator m = project_to_logical(u, enc, std::nullopt);
    CHECK(phase_aware_distance(m, u4_analytic(theta)) < 1e-9);
  }
}

TEST_CASE("zero-angle schedules synthesize to trivial logical action") {
  const Operator u2m = project_to_logical(synthesize(schedule_u2(0.0)), one_pair_enc(),
                                          ancilla_ground());
  CHECK(phase_aware_distance(u2m, Operator::Identity(2, 2)) < 1e-9);
  LogicalEncoding enc;
  enc.pairs = {{0, 1}, {2, 3}};
  const Operator u4m = project_to_logical(synthesize(schedule_u4(0.0)), enc, std::nullopt);
  CHECK(phase_aware_distance(u4m, Operator::Identity(4, 4)) < 1e-9);
}

TEST_CASE("projection of the identity is the logical identity with zero leakage") {
  const Operator m =
      project_to_logical(Operator::Identity(8, 8), one_pair_enc(), ancilla_ground());
  CHECK(phase_aware_distance(m, Operator::Identity(2, 2)) < 1e-15);
}

TEST_CASE("projection detects mid-pulse leakage out of the logical span") {
  const GateSchedule s = schedule_u1(kPi / 2.0);
  const Operator mid = propagate_schedule(s, s.total_duration() / 2.0);
  CHECK_THROWS_AS(project_to_logical(mid, one_pair_enc(), ancilla_ground()), LeakageDetected);
}

TEST_CASE("catalog identities hold with their global phases") {
  for (GateKind kind : catalog_kinds()) {
    CAPTURE(gate_kind_name(kind));
    const CatalogEntry e = gate_catalog(kind);
    const Operator u = synthesize(e.schedule);
    const Operator m = project_catalog(e, u, 1e-9);
    CHECK(phase_aware_distance(e.gate.global_phase * m, e.expected) < 1e-9);
  }
}

TEST_CASE("catalog group relations hold from synthesized matrices") {
  auto realized = [](GateKind kind) {
    const CatalogEntry e = gate_catalog(kind);
    return Operator(e.gate.global_phase * project_catalog(e, synthesize(e.schedule)));
  };
  const Operator s = realized(GateKind::S);
  const Operator t = realized(GateKind::T);
  const Operator h = realized(GateKind::H);
  const Operator cz = realized(GateKind::CZ);
  Operator z_phase = Operator::Identity(2, 2);
  z_phase(1, 1) = -1.0;
  CHECK(phase_aware_distance(s * s, z_phase) < 1e-9);
  CHECK(phase_aware_distance(t * t, s) < 1e-9);
  CHECK(phase_aware_distance(h * h, Operator::Identity(2, 2)) < 1e-9);
  CHECK(phase_aware_distance(cz * cz, Operator::Identity(4, 4)) < 1e-9);
}

TEST_CASE("every catalog schedule returns to the logical subspace at its endpoint") {
  for (GateKind kind : catalog_kinds()) {
    CAPTURE(gate_kind_name(kind));
    const CatalogEntry e = gate_catalog(kind);
    const Operator u = synthesize(e.schedule);
    CHECK_NOTHROW(project_catalog(e, u, 1e-9));
  }
}

TEST_CASE("gate names round-trip and unknown names are rejected") {
  for (GateKind kind : catalog_kinds()) {
    CHECK(gate_kind_from_name(gate_kind_name(kind)) == kind);
  }
  CHECK_THROWS_AS(gate_kind_from_name("SWAP"), UnknownGate);
}

TEST_CASE("schedule relabeling validates the target register") {
  const GateSchedule s = schedule_u1(0.3);
  CHECK_THROWS_AS(remap_schedule(s, {0, 1}, 4, "bad"), IndexOutOfRange);
  const GateSchedule ok = remap_schedule(s, {0, 2, 3}, 4, "shifted");
  CHECK(ok.num_qubits() == 4);
  CHECK(ok.segments[0].model.couplings[1].n == 3);
}

TEST_SUITE_END();
