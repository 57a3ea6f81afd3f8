// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "flowlab/rng.hpp"

#include <cmath>
#include <numbers>

#include "flowlab/error.hpp"

namespace flowlab {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

}  // namespace

std::uint64_t CounterRng::next_u64() { return mix64(key_ + (++counter_) * kGamma); }

double CounterRng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    // log1p(-u1) = log(1 - u1), finite for u1 in [0, 1).
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

Vec CounterRng::gaussian_vector(std::size_t d) {
    Vec out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = next_gaussian();
    return out;
}

std::size_t CounterRng::pick_weighted(const std::vector<double>& weights) {
    if (weights.empty()) throw Error(errkind::invalid_argument, "pick_weighted: empty weights");
    const double u = next_unit();
    double acc = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        acc += weights[k];
        if (u < acc) return k;
    }
    return weights.size() - 1;
}

Seed derive_seed(Seed base, std::string_view label, std::uint64_t index) {
    // FNV-1a over the label folded into the base key, then mixed with the index.
    std::uint64_t h = 0xCBF29CE484222325ULL ^ base;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return mix64(h + index * kGamma);
}

Vec gaussian_noise(Seed seed, std::size_t d) {
    if (d == 0) throw Error(errkind::invalid_argument, "gaussian_noise: d must be >= 1");
    CounterRng rng(seed);
    return rng.gaussian_vector(d);
}

}  // namespace flowlab
