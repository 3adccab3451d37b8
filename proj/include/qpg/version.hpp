// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#pragma once

namespace qpg {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qpg
