// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#include <vector>

#include "flowlab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return flowlab::run_command(args);
}
