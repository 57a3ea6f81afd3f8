// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "flowlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "flowlab/diag.hpp"
#include "flowlab/error.hpp"

namespace flowlab {

namespace {
constexpr double kNormFloor = 1e-12;
constexpr double kDegPerRad = 180.0 / std::numbers::pi;
}  // namespace

double angle_degrees(const Vec& v_fid, const Vec& v_steer) {
    require_same_dim(v_fid, v_steer, "angle");
    const double nf = norm(v_fid);
    const double ns = norm(v_steer);
    if (nf < kNormFloor || ns < kNormFloor) {
        throw Error(errkind::undefined_angle, "angle: component norm below 1e-12");
    }
    const double c = dot(v_fid, v_steer) / (nf * ns);
    if (std::abs(c) > 1.0 + 1e-9) {
        warn("angle: cosine " + std::to_string(c) + " clamped to [-1, 1]");
    }
    return std::acos(std::clamp(c, -1.0, 1.0)) * kDegPerRad;
}

double combined_norm_sq(double norm_fid, double norm_steer, double s, double theta_deg) {
    if (norm_fid < 0.0 || norm_steer < 0.0) {
        throw Error(errkind::invalid_argument, "combined_norm_sq: norms must be nonnegative");
    }
    const double c = std::cos(theta_deg / kDegPerRad);
    return norm_fid * norm_fid + s * s * norm_steer * norm_steer +
           2.0 * s * norm_fid * norm_steer * c;
}

double fidelity_projection(const Vec& v_fid, const Vec& v_steer, double s) {
    require_same_dim(v_fid, v_steer, "fidelity_projection");
    const double nf = norm(v_fid);
    if (nf < kNormFloor) {
        throw Error(errkind::undefined_projection, "fidelity_projection: zero fidelity direction");
    }
    return dot(axpy(v_fid, s, v_steer), v_fid) / nf;
}

double steering_projection(const Vec& v_fid, const Vec& v_steer, double s) {
    require_same_dim(v_fid, v_steer, "steering_projection");
    const double ns = norm(v_steer);
    if (ns < kNormFloor) {
        throw Error(errkind::undefined_projection, "steering_projection: zero steering direction");
    }
    return dot(axpy(v_fid, s, v_steer), v_steer) / ns;
}

AngleSeries angle_series(const EditResult& result) {
    AngleSeries series;
    series.run_id = result.run_id;
    for (const auto& rec : result.steps) {
        if (!rec.v_fid || !rec.v_steer) {
            ++series.skipped;
            continue;
        }
        const double nf = norm(*rec.v_fid);
        const double ns = norm(*rec.v_steer);
        if (nf < kNormFloor || ns < kNormFloor) {
            ++series.skipped;
            continue;
        }
        series.entries.push_back(
            {rec.index, rec.t, angle_degrees(*rec.v_fid, *rec.v_steer), nf, ns});
    }
    return series;
}

}  // namespace flowlab
