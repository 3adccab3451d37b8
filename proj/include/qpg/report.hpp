// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qpg/noise.hpp"

namespace qpg {

// One verified quantity. `value` is the number the tolerance applies to;
// smaller is better (residual norms, infidelities). A failed computation
// carries the error text in `message`, a NaN value, and passed = false.
struct CheckRecord {
  std::string name;    // gate or check identifier
  int trial = -1;      // -1 = aggregate over all trials
  std::string metric;  // e.g. "frobenius_error", "mean_infidelity"
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::map<std::string, double> details;  // extra recorded numbers
  std::vector<double> trial_values;       // per-trial fidelities, if any
  std::string message;                    // error text for failed runs
};

struct VerificationReport {
  std::string experiment;
  std::string toolkit_version;
  std::uint64_t seed = 0;
  std::string config_echo;  // serialized resolved config (JSON)
  std::vector<CheckRecord> records;
  bool passed = false;
  double wall_clock_seconds = 0.0;  // excluded from determinism guarantees
};

// Sorts records by (name, trial index) and recomputes the aggregate
// pass flag; called by every runner before the report is serialized.
void canonicalize_report(VerificationReport& report);

// JSON serialization (schema documented in the README). NaN values are
// emitted as null; wall_clock_seconds is the only non-deterministic field.
std::string report_to_json(const VerificationReport& report);

// Sweep rows as CSV with %.17g numbers. Columns: magnitude, mean_fidelity,
// min_fidelity, plus the _dd pair when the sweep carried decoupling runs.
std::string sweep_to_csv(const SweepResult& sweep);

// Report wrapper around a sweep: the usual header fields plus a "sweep"
// object holding the magnitude axis and fidelity columns.
std::string sweep_report_json(const VerificationReport& base, const SweepResult& sweep);

// Writes `content` to `path`, throwing ConfigError on I/O failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qpg
