// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

namespace flowlab {

inline constexpr std::string_view kToolName = "flowlab";
inline constexpr std::string_view kToolVersion = "0.1.0";

}  // namespace flowlab
