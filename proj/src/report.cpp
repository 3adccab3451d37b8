// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#include "qpg/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <tuple>

#include "json.hpp"
#include "qpg/errors.hpp"

namespace qpg {
namespace {

using nlohmann::json;

json record_to_json(const CheckRecord& record) {
  json r;
  r["name"] = record.name;
  r["trial"] = record.trial;
  r["metric"] = record.metric;
  r["value"] = record.value;  // NaN dumps as null
  r["tolerance"] = record.tolerance;
  r["passed"] = record.passed;
  if (!record.details.empty()) {
    r["details"] = record.details;
  }
  if (!record.trial_values.empty()) {
    r["trial_values"] = record.trial_values;
  }
  if (!record.message.empty()) {
    r["message"] = record.message;
  }
  return r;
}

json report_header(const VerificationReport& report) {
  json root;
  root["experiment"] = report.experiment;
  root["toolkit_version"] = report.toolkit_version;
  root["seed"] = report.seed;
  try {
    root["config_echo"] = json::parse(report.config_echo);
  } catch (const json::exception&) {
    root["config_echo"] = report.config_echo;
  }
  root["passed"] = report.passed;
  root["wall_clock_seconds"] = report.wall_clock_seconds;
  return root;
}

std::string format_g17(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

}  // namespace

void canonicalize_report(VerificationReport& report) {
  std::stable_sort(report.records.begin(), report.records.end(),
                   [](const CheckRecord& a, const CheckRecord& b) {
                     return std::tie(a.name, a.trial) < std::tie(b.name, b.trial);
                   });
  report.passed = !report.records.empty();
  for (const CheckRecord& record : report.records) {
    if (!record.passed) {
      report.passed = false;
    }
  }
}

std::string report_to_json(const VerificationReport& report) {
  json root = report_header(report);
  json records = json::array();
  for (const CheckRecord& record : report.records) {
    records.push_back(record_to_json(record));
  }
  root["records"] = records;
  return root.dump(2) + "\n";
}

std::string sweep_to_csv(const SweepResult& sweep) {
  const bool with_dd = !sweep.mean_fidelity_dd.empty();
  std::string csv = "magnitude,mean_fidelity,min_fidelity";
  if (with_dd) {
    csv += ",mean_fidelity_dd,min_fidelity_dd";
  }
  csv += "\n";
  for (std::size_t i = 0; i < sweep.axis.size(); ++i) {
    csv += format_g17(sweep.axis[i]);
    csv += "," + format_g17(sweep.mean_fidelity[i]);
    csv += "," + format_g17(sweep.min_fidelity[i]);
    if (with_dd) {
      csv += "," + format_g17(sweep.mean_fidelity_dd[i]);
      csv += "," + format_g17(sweep.min_fidelity_dd[i]);
    }
    csv += "\n";
  }
  return csv;
}

std::string sweep_report_json(const VerificationReport& base, const SweepResult& sweep) {
  json root = report_header(base);
  json block;
  block["label"] = sweep.label;
  block["magnitudes"] = sweep.axis;
  block["mean_fidelity"] = sweep.mean_fidelity;
  block["min_fidelity"] = sweep.min_fidelity;
  if (!sweep.mean_fidelity_dd.empty()) {
    block["mean_fidelity_dd"] = sweep.mean_fidelity_dd;
    block["min_fidelity_dd"] = sweep.min_fidelity_dd;
  }
  root["sweep"] = block;
  return root.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot open output file '" + path + "'");
  }
  out << content;
  if (!out) {
    throw ConfigError("failed writing output file '" + path + "'");
  }
}

}  // namespace qpg
