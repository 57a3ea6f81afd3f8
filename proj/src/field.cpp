// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "flowlab/field.hpp"

#include <cmath>

#include "flowlab/diag.hpp"
#include "flowlab/error.hpp"

namespace flowlab {

namespace {

GaussianMixtureModel default_null_model(const std::map<std::string, GaussianMixtureModel>& models) {
    std::vector<const GaussianMixtureModel*> refs;
    refs.reserve(models.size());
    for (const auto& [id, gm] : models) refs.push_back(&gm);
    return GaussianMixtureModel::union_mixture(refs);
}

}  // namespace

AnalyticGmmField::AnalyticGmmField(std::map<std::string, GaussianMixtureModel> models,
                                   std::optional<GaussianMixtureModel> null_model)
    : models_(std::move(models)),
      null_model_(null_model ? std::move(*null_model) : default_null_model(models_)) {
    if (models_.empty()) {
        throw Error(errkind::invalid_argument, "analytic field: needs at least one condition");
    }
    dim_ = null_model_.dim();
    for (const auto& [id, gm] : models_) {
        if (gm.dim() != dim_) {
            throw Error(errkind::invalid_argument, "analytic field: mixed dimensions across conditions");
        }
    }
}

const GaussianMixtureModel& AnalyticGmmField::model(const Condition& c) const {
    if (c.is_null()) return null_model_;
    auto it = models_.find(c.id());
    if (it == models_.end()) {
        throw Error(errkind::unknown_condition, "no distribution registered for '" + c.id() + "'");
    }
    return it->second;
}

Vec AnalyticGmmField::eval(const Vec& z, double t, const Condition& c) const {
    return gm_velocity(model(c), z, t);
}

bool AnalyticGmmField::has_condition(const Condition& c) const {
    return c.is_null() || models_.count(c.id()) > 0;
}

CfgField::CfgField(const ConditionedVelocityField& inner, double default_scale)
    : inner_(&inner), default_scale_(default_scale) {
    if (!std::isfinite(default_scale)) {
        throw Error(errkind::invalid_argument, "cfg: guidance scale must be finite");
    }
    if (default_scale < 0.0) warn("cfg: negative default guidance scale");
}

void CfgField::set_scale(const Condition& c, double omega) {
    if (c.is_null()) throw Error(errkind::invalid_argument, "cfg: cannot set a scale for the null condition");
    if (!std::isfinite(omega)) throw Error(errkind::invalid_argument, "cfg: guidance scale must be finite");
    if (omega < 0.0) warn("cfg: negative guidance scale for '" + c.id() + "'");
    scales_[c.id()] = omega;
}

double CfgField::scale_for(const Condition& c) const {
    if (c.is_null()) return 0.0;
    auto it = scales_.find(c.id());
    return it == scales_.end() ? default_scale_ : it->second;
}

Vec CfgField::eval(const Vec& z, double t, const Condition& c) const {
    if (c.is_null()) return inner_->eval(z, t, c);
    return cfg_velocity(*inner_, z, t, c, scale_for(c));
}

Vec cfg_velocity(const ConditionedVelocityField& inner, const Vec& z, double t, const Condition& c,
                 double omega) {
    if (!std::isfinite(omega)) throw Error(errkind::invalid_argument, "cfg: guidance scale must be finite");
    if (omega < 0.0) warn("cfg_velocity: negative guidance scale");
    const Vec v_null = inner.eval(z, t, Condition::null_condition());
    const Vec v_cond = inner.eval(z, t, c);
    Vec out(v_null.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = v_null[i] + omega * (v_cond[i] - v_null[i]);
    }
    return out;
}

}  // namespace flowlab
