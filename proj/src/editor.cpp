// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "flowlab/editor.hpp"

#include <algorithm>
#include <cmath>

#include "flowlab/error.hpp"
#include "flowlab/sampler.hpp"

namespace flowlab {

namespace {
constexpr double kNormFloor = 1e-12;
}

std::string to_string(EditVariant variant) {
    switch (variant) {
        case EditVariant::flowedit: return "flowedit";
        case EditVariant::flowslider: return "flowslider";
        case EditVariant::naive_scaling: return "naive_scaling";
        case EditVariant::linear_interp: return "linear_interp";
    }
    throw Error(errkind::internal, "unknown edit variant");
}

EditVariant edit_variant_from_string(const std::string& name) {
    if (name == "flowedit") return EditVariant::flowedit;
    if (name == "flowslider") return EditVariant::flowslider;
    if (name == "naive_scaling") return EditVariant::naive_scaling;
    if (name == "linear_interp") return EditVariant::linear_interp;
    throw Error(errkind::invalid_argument, "unknown edit variant '" + name + "'");
}

std::string to_string(InitMode mode) {
    return mode == InitMode::noisy_source ? "noisy_source" : "clean_source";
}

InitMode init_mode_from_string(const std::string& name) {
    if (name == "noisy_source") return InitMode::noisy_source;
    if (name == "clean_source") return InitMode::clean_source;
    throw Error(errkind::invalid_argument, "unknown init mode '" + name + "'");
}

void EditConfig::validate() const {
    if (!std::isfinite(strength)) {
        throw Error(errkind::invalid_argument, "edit config: strength must be finite");
    }
    if (edit_start_index < 1 || edit_start_index > grid.step_count()) {
        throw Error(errkind::invalid_argument,
                    "edit config: edit start index must lie in [1, " +
                        std::to_string(grid.step_count()) + "]");
    }
    if (variant == EditVariant::flowedit && strength != 1.0) {
        throw Error(errkind::invalid_argument, "edit config: flowedit requires strength 1");
    }
    if (!std::isfinite(omega_src) || !std::isfinite(omega_tar)) {
        throw Error(errkind::invalid_argument, "edit config: guidance scales must be finite");
    }
}

Vec src_state(const Vec& x_src, const Vec& noise, double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw Error(errkind::invalid_argument, "src_state: t must lie in [0, 1]");
    }
    require_same_dim(x_src, noise, "src_state");
    Vec out(x_src.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (1.0 - t) * x_src[i] + t * noise[i];
    return out;
}

Vec anchored_target(const Vec& z_edit, const Vec& z_src, const Vec& x_src) {
    require_same_dim(z_edit, z_src, "anchored_target");
    require_same_dim(z_edit, x_src, "anchored_target");
    Vec out(z_edit.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = z_edit[i] + z_src[i] - x_src[i];
    return out;
}

Vec velocity_delta(const ConditionedVelocityField& guided, const Vec& z_tar, const Vec& z_src,
                   const Condition& c_src, const Condition& c_tar, double t) {
    return sub(guided.eval(z_tar, t, c_tar), guided.eval(z_src, t, c_src));
}

Decomposition decompose(const ConditionedVelocityField& guided, const Vec& z_tar, const Vec& z_src,
                        const Condition& c_src, const Condition& c_tar, double t) {
    const Vec tar_at_tar = guided.eval(z_tar, t, c_tar);
    const Vec src_at_tar = guided.eval(z_tar, t, c_src);
    const Vec src_at_src = guided.eval(z_src, t, c_src);
    return {sub(src_at_tar, src_at_src), sub(tar_at_tar, src_at_tar)};
}

Vec modulated_delta(const Vec& v_fid, const Vec& v_steer, double s) {
    if (!std::isfinite(s)) throw Error(errkind::invalid_argument, "modulated_delta: strength must be finite");
    return axpy(v_fid, s, v_steer);
}

Vec naive_delta(const Vec& v_delta, double s) {
    if (!std::isfinite(s)) throw Error(errkind::invalid_argument, "naive_delta: strength must be finite");
    return scaled(v_delta, s);
}

Vec interp_delta(const Vec& v_src_eval, const Vec& v_tar_eval, double s) {
    if (!std::isfinite(s)) throw Error(errkind::invalid_argument, "interp_delta: strength must be finite");
    require_same_dim(v_src_eval, v_tar_eval, "interp_delta");
    Vec out(v_src_eval.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = (1.0 - s) * v_src_eval[i] + s * v_tar_eval[i];
    }
    return out;
}

namespace {

std::optional<double> step_angle(const Vec& v_fid, const Vec& v_steer) {
    const double nf = norm(v_fid);
    const double ns = norm(v_steer);
    if (nf < kNormFloor || ns < kNormFloor) return std::nullopt;
    const double c = std::clamp(dot(v_fid, v_steer) / (nf * ns), -1.0, 1.0);
    return std::acos(c);
}

}  // namespace

EditResult run_edit(const ConditionedVelocityField& inner_field, const Vec& x_src,
                    const Condition& c_src, const Condition& c_tar, const EditConfig& config,
                    const std::string& run_id) {
    config.validate();
    if (x_src.size() != inner_field.dim()) {
        throw Error(errkind::invalid_argument, "run_edit: source dimension mismatch");
    }
    require_finite(x_src, "run_edit source");
    for (const Condition* c : {&c_src, &c_tar}) {
        if (!inner_field.has_condition(*c)) {
            throw Error(errkind::unknown_condition, "run_edit: field lacks condition " + c->display());
        }
    }
    if (c_src == c_tar && config.omega_src != config.omega_tar) {
        throw Error(errkind::invalid_argument,
                    "run_edit: identical conditions need identical guidance scales");
    }

    CfgField guided(inner_field, 1.0);
    guided.set_scale(c_src, config.omega_src);
    guided.set_scale(c_tar, config.omega_tar);

    EditResult result;
    result.run_id = run_id;
    result.config = config;
    result.c_src = c_src;
    result.c_tar = c_tar;
    result.x_src = x_src;
    result.noise = gaussian_noise(config.seed, x_src.size());

    const TimeGrid& grid = config.grid;
    const int start = config.edit_start_index;
    const double s = config.strength;
    const bool full_records = config.record_decomposition || config.variant == EditVariant::flowslider;

    Vec z_edit = config.init_mode == InitMode::noisy_source
                     ? src_state(x_src, result.noise, grid.at(start))
                     : x_src;

    for (int i = start; i >= 1; --i) {
        const double t = grid.at(i);
        EditStepRecord rec;
        rec.index = i;
        rec.t = t;
        rec.z_src = src_state(x_src, result.noise, t);
        rec.z_tar = anchored_target(z_edit, rec.z_src, x_src);
        rec.z_edit = z_edit;
        try {
            const Vec tar_at_tar = guided.eval(rec.z_tar, t, c_tar);
            const Vec src_at_src = guided.eval(rec.z_src, t, c_src);
            rec.v_delta = sub(tar_at_tar, src_at_src);
            if (full_records) {
                const Vec src_at_tar = guided.eval(rec.z_tar, t, c_src);
                rec.v_fid = sub(src_at_tar, src_at_src);
                rec.v_steer = sub(tar_at_tar, src_at_tar);
                rec.theta_rad = step_angle(*rec.v_fid, *rec.v_steer);
            }
            switch (config.variant) {
                case EditVariant::flowslider:
                    rec.v_applied = modulated_delta(*rec.v_fid, *rec.v_steer, s);
                    break;
                case EditVariant::flowedit:
                    // With the decomposition recorded, apply its sum so the s=1
                    // slider run reproduces this trajectory bit-for-bit.
                    rec.v_applied = full_records ? modulated_delta(*rec.v_fid, *rec.v_steer, 1.0)
                                                 : rec.v_delta;
                    break;
                case EditVariant::naive_scaling:
                    rec.v_applied = naive_delta(rec.v_delta, s);
                    break;
                case EditVariant::linear_interp:
                    rec.v_applied = interp_delta(src_at_src, tar_at_tar, s);
                    break;
            }
            require_finite(rec.v_applied, "run_edit applied velocity");
        } catch (const Error& e) {
            result.x_edit = z_edit;
            throw AbortedRunError("edit aborted at step " + std::to_string(i) + " (t=" +
                                      std::to_string(t) + "): " + e.what(),
                                  std::move(result));
        }
        z_edit = euler_step(z_edit, t, grid.at(i - 1), rec.v_applied);
        result.steps.push_back(std::move(rec));
    }
    result.x_edit = std::move(z_edit);
    return result;
}

void EditResult::verify_replay() const {
    if (steps.empty()) throw Error(errkind::numeric, "edit result: no steps recorded");
    for (std::size_t k = 0; k < steps.size(); ++k) {
        const auto& rec = steps[k];
        const Vec next =
            euler_step(rec.z_edit, rec.t, config.grid.at(rec.index - 1), rec.v_applied);
        const Vec& expected = k + 1 < steps.size() ? steps[k + 1].z_edit : x_edit;
        if (next != expected) {
            throw Error(errkind::numeric,
                        "edit result: replay mismatch at step index " + std::to_string(rec.index));
        }
    }
}

}  // namespace flowlab
