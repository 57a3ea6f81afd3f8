// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "flowlab/editor.hpp"
#include "flowlab/vec.hpp"

namespace flowlab {

// Angle between the fidelity and steering components, in degrees.
// Throws Error(undefined-angle) when either norm is below 1e-12. Cosines are
// clamped to [-1, 1]; excursions beyond 1e-9 are reported as anomalies.
double angle_degrees(const Vec& v_fid, const Vec& v_steer);

// ||v_fid + s v_steer||^2 from norms and the angle:
// nf^2 + s^2 ns^2 + 2 s nf ns cos(theta).
double combined_norm_sq(double norm_fid, double norm_steer, double s, double theta_deg);

// Scalar projection of v_fid + s v_steer onto the fidelity direction.
// Affine in s with slope ||v_steer|| cos(theta).
double fidelity_projection(const Vec& v_fid, const Vec& v_steer, double s);

// Scalar projection onto the steering direction; slope in s is ||v_steer||.
double steering_projection(const Vec& v_fid, const Vec& v_steer, double s);

struct AngleEntry {
    int step = 0;
    double t = 0.0;
    double theta_deg = 0.0;
    double norm_fid = 0.0;
    double norm_steer = 0.0;
};

struct AngleSeries {
    std::vector<AngleEntry> entries;
    std::size_t skipped = 0;  // steps without a defined angle
    std::string run_id;
};

// Recomputes the per-step angle from the stored decomposition velocities.
AngleSeries angle_series(const EditResult& result);

}  // namespace flowlab
