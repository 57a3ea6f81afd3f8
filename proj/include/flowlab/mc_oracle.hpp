// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "flowlab/gmm.hpp"
#include "flowlab/rng.hpp"
#include "flowlab/vec.hpp"

namespace flowlab {

struct McVelocityEstimate {
    Vec value;
    Vec standard_error;
    double effective_sample_size;
};

// Brute-force cross-check for gm_velocity: draws (z1, z0) pairs, forms
// z_t = (1-t) z1 + t z0, and kernel-weights g = z0 - z1 by the proximity of
// z_t to the query point. The Gaussian kernel bandwidth is
// bandwidth_fraction times the per-coordinate marginal standard deviation
// of z_t. Self-normalized estimate with per-coordinate standard errors.
// Throws Error(insufficient-samples) when the effective sample size is < 50.
McVelocityEstimate mc_velocity_oracle(const GaussianMixtureModel& gm, const Vec& z, double t,
                                      std::size_t n, Seed seed, double bandwidth_fraction);

}  // namespace flowlab
