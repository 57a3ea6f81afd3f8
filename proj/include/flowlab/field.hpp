// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "flowlab/gmm.hpp"
#include "flowlab/vec.hpp"

namespace flowlab {

// Conditioning label: a named condition or the designated null condition.
class Condition {
public:
    Condition() = default;  // null
    explicit Condition(std::string id) : id_(std::move(id)), null_(false) {}

    static Condition null_condition() { return Condition(); }

    bool is_null() const { return null_; }
    const std::string& id() const { return id_; }
    std::string display() const { return null_ ? "<null>" : id_; }

    friend bool operator==(const Condition& a, const Condition& b) {
        return a.null_ == b.null_ && a.id_ == b.id_;
    }

private:
    std::string id_;
    bool null_ = true;
};

// Evaluable mapping (state, time, condition) -> velocity. Evaluation is pure;
// implementations are immutable after construction and safe to share.
class ConditionedVelocityField {
public:
    virtual ~ConditionedVelocityField() = default;

    virtual Vec eval(const Vec& z, double t, const Condition& c) const = 0;
    virtual std::size_t dim() const = 0;
    virtual bool has_condition(const Condition& c) const = 0;
};

// Analytic rectified-flow field over one Gaussian mixture per condition.
// The null condition defaults to the equal-weight union of all registered
// mixtures (an "unconditional" marginal); an explicit model may override it.
class AnalyticGmmField final : public ConditionedVelocityField {
public:
    explicit AnalyticGmmField(std::map<std::string, GaussianMixtureModel> models,
                              std::optional<GaussianMixtureModel> null_model = std::nullopt);

    Vec eval(const Vec& z, double t, const Condition& c) const override;
    std::size_t dim() const override { return dim_; }
    bool has_condition(const Condition& c) const override;

    const GaussianMixtureModel& model(const Condition& c) const;

private:
    std::map<std::string, GaussianMixtureModel> models_;
    GaussianMixtureModel null_model_;
    std::size_t dim_;
};

// Classifier-free guidance wrapper:
//   V(z, t, c) = V_inner(z, t, null) + omega_c * (V_inner(z, t, c) - V_inner(z, t, null))
// with a per-condition guidance scale (default scale when unset).
class CfgField final : public ConditionedVelocityField {
public:
    explicit CfgField(const ConditionedVelocityField& inner, double default_scale = 1.0);

    // Negative scales are accepted but flagged on stderr.
    void set_scale(const Condition& c, double omega);
    double scale_for(const Condition& c) const;

    Vec eval(const Vec& z, double t, const Condition& c) const override;
    std::size_t dim() const override { return inner_->dim(); }
    bool has_condition(const Condition& c) const override { return inner_->has_condition(c); }

private:
    const ConditionedVelocityField* inner_;  // non-owning; caller keeps it alive
    double default_scale_;
    std::map<std::string, double> scales_;
};

// Single guided evaluation per the guidance formula above.
Vec cfg_velocity(const ConditionedVelocityField& inner, const Vec& z, double t, const Condition& c,
                 double omega);

}  // namespace flowlab
