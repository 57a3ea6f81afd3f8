// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

namespace flowlab {

// Diagnostics go to stderr only; data outputs stay byte-deterministic.
void warn(const std::string& message);
std::uint64_t warning_count();
void reset_warning_count();

}  // namespace flowlab
