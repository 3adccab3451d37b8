// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#include "qpg/runner.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

#include "qpg/errors.hpp"
#include "qpg/protect.hpp"
#include "qpg/qrm.hpp"
#include "qpg/version.hpp"

namespace qpg {
namespace {

constexpr double kGateTolerance = 1e-9;
constexpr double kTransportTolerance = 1e-9;
constexpr double kCommutatorTolerance = 1e-12;
constexpr double kDephasingTolerance = 1e-10;
constexpr double kSingleQubitInfidelity = 1e-3;
constexpr double kTwoQubitInfidelity = 2e-3;
constexpr int kTransportSamples = 100;

using Clock = std::chrono::steady_clock;

double seconds_since(const Clock::time_point& start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Distributes [0, n) over the worker pool; the first exception wins and is
// rethrown on the calling thread after all workers join.
void parallel_for(int n, const std::function<void(int)>& body) {
  const int workers = std::min(runner_thread_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) {
      body(i);
    }
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) {
            first_error = std::current_exception();
          }
        }
      }
    });
  }
  for (std::thread& t : pool) {
    t.join();
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
}

VerificationReport base_report(const ExperimentConfig& config) {
  VerificationReport report;
  report.experiment = config.experiment;
  report.toolkit_version = kVersion;
  report.seed = config.seed;
  report.config_echo = config_to_json(config);
  return report;
}

// Computational-basis ket index of each logical basis state (the encoded
// states are single kets by construction).
std::vector<Eigen::Index> logical_ket_indices(const CatalogEntry& entry) {
  const int n = entry.schedule.num_qubits();
  const auto basis = logical_basis_states(entry.encoding, n, entry.ancilla);
  std::vector<Eigen::Index> kets;
  kets.reserve(basis.size());
  for (const State& b : basis) {
    Eigen::Index best = 0;
    double max_abs = 0.0;
    for (Eigen::Index k = 0; k < b.size(); ++k) {
      if (std::abs(b(k)) > max_abs) {
        max_abs = std::abs(b(k));
        best = k;
      }
    }
    kets.push_back(best);
  }
  return kets;
}

// A lambda pulse couples two partner qubits to one shared hub. Reduced to
// hub-first coordinates, its two computational branches are exactly the
// three-qubit auxiliary-branch subspaces, so the transport certificate can
// be evaluated there regardless of the register the segment lives on.
std::optional<double> lambda_branch_residual(const PulseSegment& segment, int samples) {
  if (segment.model.couplings.size() != 2) {
    return std::nullopt;
  }
  const XYCoupling& a = segment.model.couplings[0];
  const XYCoupling& b = segment.model.couplings[1];
  const bool shares_hub =
      a.m == b.m || a.m == b.n || a.n == b.m || a.n == b.n;
  if (!shares_hub) {
    return std::nullopt;
  }
  PulseSegment canonical;
  canonical.model.num_qubits = 3;
  canonical.model.couplings = {{0, 1, a.strength}, {0, 2, b.strength}};
  canonical.duration = segment.duration;
  canonical.sign = segment.sign;
  GateSchedule reduced;
  reduced.segments = {canonical};
  reduced.label = "lambda-segment";
  const double r0 = check_parallel_transport(reduced, s0_subspace(), samples);
  const double r1 = check_parallel_transport(reduced, s1_subspace(), samples);
  return std::max(r0, r1);
}

CheckRecord residual_record(std::string name, std::string metric, double value,
                            double tolerance) {
  CheckRecord record;
  record.name = std::move(name);
  record.metric = std::move(metric);
  record.value = value;
  record.tolerance = tolerance;
  record.passed = value < tolerance;
  return record;
}

}  // namespace

int runner_thread_count() {
  if (const char* env = std::getenv("QPG_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || parsed < 1) {
      throw ConfigError("QPG_THREADS must be a positive integer");
    }
    return int(parsed);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? int(hw) : 1;
}

VerificationReport run_verify_gates(const ExperimentConfig& config) {
  const auto start = Clock::now();
  VerificationReport report = base_report(config);
  const double tolerance = config.tolerance.value_or(kGateTolerance);
  std::vector<CheckRecord> records(config.gates.size());
  parallel_for(int(config.gates.size()), [&](int i) {
    const CatalogEntry entry = gate_catalog(config.gates[std::size_t(i)],
                                            gate_params(config.spin));
    const Operator logical = project_catalog(entry, synthesize(entry.schedule));
    const double error = (entry.gate.global_phase * logical - entry.expected).norm();
    CheckRecord record = residual_record(gate_kind_name(entry.gate.kind),
                                         "frobenius_error", error, tolerance);
    record.details["process_fidelity"] = process_fidelity(entry.expected, logical);
    records[std::size_t(i)] = std::move(record);
  });
  report.records = std::move(records);
  canonicalize_report(report);
  report.wall_clock_seconds = seconds_since(start);
  return report;
}

VerificationReport run_verify_protection(const ExperimentConfig& config) {
  const auto start = Clock::now();
  VerificationReport report = base_report(config);
  const double residual_tol = config.tolerance.value_or(kTransportTolerance);
  const double commutator_tol = config.tolerance.value_or(kCommutatorTolerance);
  const double dephasing_tol = config.tolerance.value_or(kDephasingTolerance);

  // Three records per selected gate: endpoint invariance of the evolved
  // logical frame, zero dynamical phase along every computational ray, and
  // the branch-subspace transport certificate of each lambda segment.
  std::vector<std::array<CheckRecord, 3>> per_gate(config.gates.size());
  parallel_for(int(config.gates.size()), [&](int i) {
    const CatalogEntry entry = gate_catalog(config.gates[std::size_t(i)],
                                            gate_params(config.spin));
    const std::string name = gate_kind_name(entry.gate.kind);
    const int n = entry.schedule.num_qubits();
    const Eigen::Index dim = Eigen::Index(1) << n;
    const auto kets = logical_ket_indices(entry);
    const Operator u = synthesize(entry.schedule);

    double endpoint = check_subspace_invariance(u, subspace_from_kets(kets, dim));
    if (n == 3) {
      endpoint = std::max(endpoint, check_subspace_invariance(u, s0_subspace()));
      endpoint = std::max(endpoint, check_subspace_invariance(u, s1_subspace()));
    }

    double loop = 0.0;
    for (Eigen::Index ket : kets) {
      loop = std::max(loop, check_parallel_transport(
                                entry.schedule, subspace_from_kets({ket}, dim),
                                kTransportSamples));
    }

    double branch = 0.0;
    int lambda_segments = 0;
    for (const PulseSegment& segment : entry.schedule.segments) {
      if (const auto residual = lambda_branch_residual(segment, kTransportSamples)) {
        branch = std::max(branch, *residual);
        ++lambda_segments;
      }
    }

    per_gate[std::size_t(i)][0] =
        residual_record(name, "endpoint_invariance", endpoint, residual_tol);
    per_gate[std::size_t(i)][1] =
        residual_record(name, "transport_loop", loop, residual_tol);
    CheckRecord branch_record =
        residual_record(name, "transport_branch", branch, residual_tol);
    branch_record.details["lambda_segments"] = double(lambda_segments);
    per_gate[std::size_t(i)][2] = std::move(branch_record);
  });
  for (auto& triple : per_gate) {
    for (auto& record : triple) {
      report.records.push_back(std::move(record));
    }
  }

  // Decoupling-group commutators of the four gate Hamiltonians, maximized
  // over group elements and a grid of mixing angles.
  const std::vector<double> angles = {0.0, 0.4, 1.1, 1.5707963267948966, 2.5};
  const DecouplingGroup group3 = make_decoupling_group(3);
  const DecouplingGroup group4 = make_decoupling_group(4);
  auto max_commutator = [](const Operator& h, const DecouplingGroup& group) {
    const auto norms = dd_commutators(h, group);
    double worst = 0.0;
    for (double norm : norms) {
      worst = std::max(worst, norm);
    }
    return worst;
  };
  double h1 = 0.0;
  double h3 = 0.0;
  for (double theta : angles) {
    h1 = std::max(h1, max_commutator(
                          build_xy_hamiltonian(h1_params(theta, config.spin.omega)),
                          group3));
    h3 = std::max(h3, max_commutator(build_xy_hamiltonian(
                                         h3_params(theta, config.spin.omega_prime)),
                                     group4));
  }
  const double h2 = max_commutator(
      build_xy_hamiltonian(h2_params(config.spin.omega12)), group3);
  const double h4 = max_commutator(
      build_xy_hamiltonian(h4_params(config.spin.omega34)), group4);
  report.records.push_back(residual_record("H1", "dd_commutator_max", h1, commutator_tol));
  report.records.push_back(residual_record("H2", "dd_commutator_max", h2, commutator_tol));
  report.records.push_back(residual_record("H3", "dd_commutator_max", h3, commutator_tol));
  report.records.push_back(residual_record("H4", "dd_commutator_max", h4, commutator_tol));

  // Collective-dephasing immunity of the encoded subspaces.
  CheckRecord one_pair = residual_record(
      "dfs_one_pair", "dephasing_infidelity",
      collective_dephasing_certificate(default_encoding(3), 20, 20, config.seed),
      dephasing_tol);
  CheckRecord two_pairs = residual_record(
      "dfs_two_pairs", "dephasing_infidelity",
      collective_dephasing_certificate(default_encoding(4), 20, 20, config.seed),
      dephasing_tol);
  one_pair.details["states"] = 20.0;
  one_pair.details["magnitudes"] = 20.0;
  two_pairs.details["states"] = 20.0;
  two_pairs.details["magnitudes"] = 20.0;
  report.records.push_back(std::move(one_pair));
  report.records.push_back(std::move(two_pairs));

  canonicalize_report(report);
  report.wall_clock_seconds = seconds_since(start);
  return report;
}

VerificationReport run_simulate_qrm(const ExperimentConfig& config) {
  const auto start = Clock::now();
  VerificationReport report = base_report(config);
  std::vector<CheckRecord> records(config.gates.size());
  parallel_for(int(config.gates.size()), [&](int i) {
    const GateKind kind = config.gates[std::size_t(i)];
    const bool two_qubit = kind == GateKind::ZZ_PHASE || kind == GateKind::CZ;
    const double threshold = config.tolerance.value_or(
        two_qubit ? kTwoQubitInfidelity : kSingleQubitInfidelity);
    CheckRecord record;
    record.name = gate_kind_name(kind);
    record.metric = "mean_infidelity";
    record.tolerance = threshold;
    try {
      const PhysicalGateResult result = simulate_catalog_gate(
          kind, config.trials, config.seed, config.qrm, config.qrm_sim);
      record.value = 1.0 - result.mean_fidelity;
      record.passed = record.value <= threshold;
      record.details["mean_fidelity"] = result.mean_fidelity;
      record.details["min_fidelity"] = result.min_fidelity;
      record.details["mean_leakage"] = result.mean_leakage;
      record.trial_values = result.per_trial;
    } catch (const Error& e) {
      record.value = std::numeric_limits<double>::quiet_NaN();
      record.passed = false;
      record.message = e.what();
    }
    records[std::size_t(i)] = std::move(record);
  });
  report.records = std::move(records);
  canonicalize_report(report);
  report.wall_clock_seconds = seconds_since(start);
  return report;
}

SweepArtifacts run_noise_sweep(const ExperimentConfig& config) {
  const auto start = Clock::now();
  SweepArtifacts artifacts;
  artifacts.report = base_report(config);

  const CatalogEntry entry =
      gate_catalog(config.gates.front(), gate_params(config.spin));
  NoiseChannel channel;
  channel.kind = config.noise.kind;
  channel.seed = config.seed;
  channel.target_qubit = config.noise.target_qubit;
  const std::vector<double> magnitudes =
      config.noise.magnitudes.empty() ? default_magnitude_grid(config.spin.omega)
                                      : config.noise.magnitudes;
  artifacts.sweep = noise_sweep(entry.schedule, channel, magnitudes, config.trials,
                                config.noise.dd_cycles);
  artifacts.report.passed = true;
  artifacts.report.wall_clock_seconds = seconds_since(start);
  return artifacts;
}

VerificationReport run_experiment(const ExperimentConfig& config) {
  if (config.experiment == "verify-gates") {
    return run_verify_gates(config);
  }
  if (config.experiment == "verify-protection") {
    return run_verify_protection(config);
  }
  if (config.experiment == "simulate-qrm") {
    return run_simulate_qrm(config);
  }
  if (config.experiment == "noise-sweep") {
    return run_noise_sweep(config).report;
  }
  throw ConfigError("unknown experiment '" + config.experiment + "'");
}

int report_exit_code(const VerificationReport& report) {
  for (const CheckRecord& record : report.records) {
    if (!record.message.empty()) {
      return 3;
    }
  }
  return report.passed ? 0 : 1;
}

}  // namespace qpg
