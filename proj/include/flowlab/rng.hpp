// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string_view>

#include "flowlab/vec.hpp"

namespace flowlab {

using Seed = std::uint64_t;

// Counter-based deterministic generator: output i is a pure hash of
// (seed, i), so streams are reproducible bit-for-bit and never share state.
// The mixing function is the splitmix64 finalizer.
class CounterRng {
public:
    explicit CounterRng(Seed seed) : key_(seed) {}

    std::uint64_t next_u64();
    // Uniform in [0, 1), 53-bit resolution.
    double next_unit();
    // Standard normal via Box-Muller; pairs are cached.
    double next_gaussian();
    Vec gaussian_vector(std::size_t d);
    // Index into a normalized weight vector.
    std::size_t pick_weighted(const std::vector<double>& weights);

private:
    Seed key_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Derives an independent stream from a base seed, a label, and an index.
Seed derive_seed(Seed base, std::string_view label, std::uint64_t index = 0);

// d independent standard-normal draws, deterministic per (seed, d).
// Throws Error(invalid-argument) when d = 0.
Vec gaussian_noise(Seed seed, std::size_t d);

}  // namespace flowlab
