// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "flowlab/sampler.hpp"

#include <string>

#include "flowlab/error.hpp"

namespace flowlab {

Vec euler_step(const Vec& z, double t_from, double t_to, const Vec& v) {
    if (t_from == t_to) throw Error(errkind::invalid_argument, "euler_step: zero time step");
    require_same_dim(z, v, "euler_step");
    require_finite(v, "euler_step velocity");
    return axpy(z, t_to - t_from, v);
}

GenerationRun generate(const ConditionedVelocityField& field, const Condition& c, const Vec& noise,
                       const TimeGrid& grid, Seed seed_provenance) {
    if (!field.has_condition(c)) {
        throw Error(errkind::unknown_condition, "generate: field lacks condition " + c.display());
    }
    if (noise.size() != field.dim()) {
        throw Error(errkind::invalid_argument, "generate: noise dimension mismatch");
    }
    require_finite(noise, "generate noise");

    const int steps = grid.step_count();
    GenerationRun run;
    run.seed = seed_provenance;
    run.condition = c;
    run.grid = grid;
    run.states.resize(static_cast<std::size_t>(steps) + 1);
    run.states[static_cast<std::size_t>(steps)] = noise;
    for (int i = steps; i >= 1; --i) {
        const Vec& z = run.states[static_cast<std::size_t>(i)];
        Vec v;
        try {
            v = field.eval(z, grid.at(i), c);
        } catch (const Error& e) {
            throw Error(e.kind(), std::string(e.what()) + " (generate step " + std::to_string(i) +
                                      ", t=" + std::to_string(grid.at(i)) + ")");
        }
        run.states[static_cast<std::size_t>(i) - 1] = euler_step(z, grid.at(i), grid.at(i - 1), v);
    }
    return run;
}

void GenerationRun::verify_replay(const ConditionedVelocityField& field) const {
    if (states.size() != static_cast<std::size_t>(grid.step_count()) + 1) {
        throw Error(errkind::numeric, "generation run: state count does not match grid");
    }
    for (int i = grid.step_count(); i >= 1; --i) {
        const Vec v = field.eval(states[static_cast<std::size_t>(i)], grid.at(i), condition);
        const Vec expected = euler_step(states[static_cast<std::size_t>(i)], grid.at(i), grid.at(i - 1), v);
        if (expected != states[static_cast<std::size_t>(i) - 1]) {
            throw Error(errkind::numeric,
                        "generation run: replay mismatch at step " + std::to_string(i));
        }
    }
}

}  // namespace flowlab
