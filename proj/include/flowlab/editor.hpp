// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flowlab/error.hpp"
#include "flowlab/field.hpp"
#include "flowlab/rng.hpp"
#include "flowlab/time_grid.hpp"
#include "flowlab/vec.hpp"

namespace flowlab {

// Update rule applied to the edit path. flowslider scales only the steering
// term; flowedit is its s=1 instance; naive_scaling multiplies the whole
// velocity difference; linear_interp blends the two absolute evaluations
// (note: not a difference, so it moves even when source and target agree).
enum class EditVariant { flowedit, flowslider, naive_scaling, linear_interp };

std::string to_string(EditVariant variant);
EditVariant edit_variant_from_string(const std::string& name);

enum class InitMode { noisy_source, clean_source };

std::string to_string(InitMode mode);
InitMode init_mode_from_string(const std::string& name);

struct EditConfig {
    EditVariant variant = EditVariant::flowslider;
    double strength = 1.0;
    TimeGrid grid = TimeGrid::uniform(28);
    int edit_start_index = 20;  // n_max: editing covers grid indices n_max..1
    double omega_src = 3.5;
    double omega_tar = 3.5;
    InitMode init_mode = InitMode::noisy_source;
    Seed seed = 0;
    // When false, non-flowslider variants skip the same-state cross-prompt
    // evaluation; step records then omit the decomposition.
    bool record_decomposition = true;

    void validate() const;
};

struct EditStepRecord {
    int index = 0;
    double t = 0.0;
    Vec z_src;
    Vec z_tar;
    Vec z_edit;  // edit-path state at t_i, before this step's update
    std::optional<Vec> v_fid;
    std::optional<Vec> v_steer;
    Vec v_delta;
    Vec v_applied;
    std::optional<double> theta_rad;  // absent when either component norm < 1e-12
};

struct EditResult {
    std::string run_id;
    EditConfig config;
    Condition c_src;
    Condition c_tar;
    Vec x_src;
    Vec noise;
    std::vector<EditStepRecord> steps;  // index n_max down to 1
    Vec x_edit;

    // Re-checks the Euler recurrence of the stored records bit-for-bit.
    void verify_replay() const;
};

class AbortedRunError : public Error {
public:
    AbortedRunError(const std::string& message, EditResult partial)
        : Error(errkind::aborted_run, message), partial_(std::move(partial)) {}
    const EditResult& partial() const { return partial_; }

private:
    EditResult partial_;
};

// z_t^src = (1 - t) x_src + t eps.
Vec src_state(const Vec& x_src, const Vec& noise, double t);

// z_t^tar = z_t^edit + z_t^src - x_src.
Vec anchored_target(const Vec& z_edit, const Vec& z_src, const Vec& x_src);

// V(z_tar, t, c_tar) - V(z_src, t, c_src) over the guided field.
Vec velocity_delta(const ConditionedVelocityField& guided, const Vec& z_tar, const Vec& z_src,
                   const Condition& c_src, const Condition& c_tar, double t);

// Exact split of the velocity difference by adding and subtracting the
// same-state source-prompt evaluation:
//   v_steer = V(z_tar, c_tar) - V(z_tar, c_src)   (same state, cross prompt)
//   v_fid   = V(z_tar, c_src) - V(z_src, c_src)   (same prompt, cross state)
struct Decomposition {
    Vec v_fid;
    Vec v_steer;
};
Decomposition decompose(const ConditionedVelocityField& guided, const Vec& z_tar, const Vec& z_src,
                        const Condition& c_src, const Condition& c_tar, double t);

// v_fid + s * v_steer.
Vec modulated_delta(const Vec& v_fid, const Vec& v_steer, double s);

// s * v_delta.
Vec naive_delta(const Vec& v_delta, double s);

// (1 - s) * v_src_eval + s * v_tar_eval.
Vec interp_delta(const Vec& v_src_eval, const Vec& v_tar_eval, double s);

// Runs the edit loop over grid indices n_max..1. The guidance wrap is built
// internally: omega_src applies to c_src, omega_tar to c_tar.
EditResult run_edit(const ConditionedVelocityField& inner_field, const Vec& x_src,
                    const Condition& c_src, const Condition& c_tar, const EditConfig& config,
                    const std::string& run_id = "");

}  // namespace flowlab
