// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace flowlab {

// Latent states and velocities are flat double vectors; dimension is fixed per
// experiment and validated at module boundaries rather than encoded in a type.
using Vec = std::vector<double>;

Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scaled(const Vec& a, double factor);
// a + factor * b
Vec axpy(const Vec& a, double factor, const Vec& b);

double dot(const Vec& a, const Vec& b);
double squared_norm(const Vec& a);
double norm(const Vec& a);
double max_abs(const Vec& a);
double max_abs_diff(const Vec& a, const Vec& b);

bool all_finite(const Vec& a);

// Throws Error(numeric) when any entry is NaN or infinite.
void require_finite(const Vec& a, const std::string& what);
// Throws Error(invalid-argument) on dimension mismatch.
void require_same_dim(const Vec& a, const Vec& b, const std::string& what);

}  // namespace flowlab
