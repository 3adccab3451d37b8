// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace qpg {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A matrix expected to be Hermitian deviates beyond tolerance.
struct NotHermitian : Error {
  using Error::Error;
};

// An iterative solver (eigensolver, bisection) failed to converge.
struct ConvergenceFailure : Error {
  using Error::Error;
};

// Operands have incompatible dimensions.
struct DimensionMismatch : Error {
  using Error::Error;
};

// A qubit or site index lies outside the system.
struct IndexOutOfRange : Error {
  using Error::Error;
};

// A propagator fails to preserve the logical subspace at a gate endpoint.
struct LeakageDetected : Error {
  using Error::Error;
};

// A gate name outside the supported catalog.
struct UnknownGate : Error {
  using Error::Error;
};

// Oscillator-basis truncation changed low-lying energies beyond tolerance.
struct TruncationNotConverged : Error {
  using Error::Error;
};

// A requested product space exceeds the supported dense dimension.
struct DimensionOverflow : Error {
  using Error::Error;
};

// Drive calibration could not locate the expected exchange oscillation.
struct CalibrationFailed : Error {
  using Error::Error;
};

// Mean endpoint population outside the effective-qubit manifold is too large.
struct LeakageExceeded : Error {
  using Error::Error;
};

// Invalid or malformed experiment configuration.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace qpg
