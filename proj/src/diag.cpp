// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "flowlab/diag.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace flowlab {

namespace {
std::atomic<std::uint64_t> g_warning_count{0};
std::mutex g_stderr_mutex;
}  // namespace

void warn(const std::string& message) {
    g_warning_count.fetch_add(1, std::memory_order_relaxed);
    std::lock_guard<std::mutex> lock(g_stderr_mutex);
    std::cerr << "[flowlab] warning: " << message << "\n";
}

std::uint64_t warning_count() { return g_warning_count.load(std::memory_order_relaxed); }

void reset_warning_count() { g_warning_count.store(0, std::memory_order_relaxed); }

}  // namespace flowlab
