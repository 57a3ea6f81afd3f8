// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flowlab/field.hpp"
#include "flowlab/gmm.hpp"
#include "flowlab/rng.hpp"
#include "flowlab/serialize.hpp"

namespace flowlab {

// Synthetic condition-pair families: the target mixture is derived from the
// source mixture by one structured transform.
enum class ScenarioFamily {
    mean_shift,           // translate all means
    anisotropic_stretch,  // scale one axis of means and covariances
    rotation,             // rotate means about the origin in the first two axes
    component_swap,       // reverse the weight vector
    contraction,          // shrink all covariances
    identity,             // target equals source
};

std::string to_string(ScenarioFamily family);
ScenarioFamily scenario_family_from_string(const std::string& name);

// Explicit transform parameters; unset fields are drawn from the seed.
struct FamilyParams {
    std::optional<Vec> shift;
    std::optional<std::size_t> stretch_axis;
    std::optional<double> stretch_factor;
    std::optional<double> rotation_angle;  // radians
    std::optional<double> contraction_factor;
};

struct ScenarioSpec {
    std::string name;
    std::string category;
    ScenarioFamily family = ScenarioFamily::mean_shift;
    std::size_t dim = 2;
    std::size_t sample_count = 8;
    std::optional<GaussianMixtureModel> base;  // source mixture; random when unset
    FamilyParams params;
};

struct Scenario {
    std::string name;
    std::string category;
    GaussianMixtureModel gm_src;
    GaussianMixtureModel gm_tar;
    std::vector<Vec> source_samples;
    Seed seed = 0;
};

Scenario make_scenario(const ScenarioSpec& spec, Seed seed);

// Inner analytic field for a scenario: conditions "src" and "tar" plus the
// default union null model.
AnalyticGmmField make_scenario_field(const Scenario& scenario);

inline Condition source_condition() { return Condition("src"); }
inline Condition target_condition() { return Condition("tar"); }

struct SuiteConfig {
    Seed seed = 20260210;
    std::size_t dim = 2;
    std::size_t samples_per_scenario = 8;
    std::vector<std::pair<ScenarioFamily, std::size_t>> family_counts = {
        {ScenarioFamily::mean_shift, 105},     {ScenarioFamily::anisotropic_stretch, 44},
        {ScenarioFamily::rotation, 38},        {ScenarioFamily::component_swap, 18},
        {ScenarioFamily::contraction, 45},
    };
};

std::vector<Scenario> make_suite(const SuiteConfig& config);

Json to_json(const SuiteConfig& config);
SuiteConfig suite_config_from_json(const Json& j);

Json to_json(const ScenarioSpec& spec);
ScenarioSpec scenario_spec_from_json(const Json& j);

}  // namespace flowlab
