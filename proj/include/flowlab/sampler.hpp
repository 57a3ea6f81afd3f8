// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "flowlab/field.hpp"
#include "flowlab/rng.hpp"
#include "flowlab/time_grid.hpp"
#include "flowlab/vec.hpp"

namespace flowlab {

// Record of one generation: states[i] is the state at grid node t_i, so
// states[T] is the initial noise and states[0] the generated sample.
struct GenerationRun {
    Seed seed = 0;  // provenance; 0 when the noise was supplied directly
    Condition condition;
    TimeGrid grid = TimeGrid::uniform(1);
    std::vector<Vec> states;

    const Vec& final_state() const { return states.front(); }
    const Vec& initial_noise() const { return states.back(); }

    // Re-checks the Euler recurrence bit-for-bit against the field.
    void verify_replay(const ConditionedVelocityField& field) const;
};

// Explicit Euler update z + (t_to - t_from) * v.
Vec euler_step(const Vec& z, double t_from, double t_to, const Vec& v);

// Integrates the field backward from t = 1 (noise) to t = 0 (data).
GenerationRun generate(const ConditionedVelocityField& field, const Condition& c, const Vec& noise,
                       const TimeGrid& grid, Seed seed_provenance = 0);

}  // namespace flowlab
