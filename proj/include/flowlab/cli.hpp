// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace flowlab {

// Entry point behind the binary: parses argv (without the program name),
// executes one subcommand, and writes outputs plus a run manifest.
// Exit codes: 0 success, 1 runtime failure (single-line "error: <kind>: ..."
// on err), 2 usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out = std::cout,
                std::ostream& err = std::cerr);

}  // namespace flowlab
