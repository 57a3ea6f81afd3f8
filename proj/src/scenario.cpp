// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "flowlab/scenario.hpp"

#include <cmath>
#include <cstdio>

#include "flowlab/error.hpp"

namespace flowlab {

std::string to_string(ScenarioFamily family) {
    switch (family) {
        case ScenarioFamily::mean_shift: return "mean_shift";
        case ScenarioFamily::anisotropic_stretch: return "anisotropic_stretch";
        case ScenarioFamily::rotation: return "rotation";
        case ScenarioFamily::component_swap: return "component_swap";
        case ScenarioFamily::contraction: return "contraction";
        case ScenarioFamily::identity: return "identity";
    }
    throw Error(errkind::internal, "unknown scenario family");
}

ScenarioFamily scenario_family_from_string(const std::string& name) {
    if (name == "mean_shift") return ScenarioFamily::mean_shift;
    if (name == "anisotropic_stretch") return ScenarioFamily::anisotropic_stretch;
    if (name == "rotation") return ScenarioFamily::rotation;
    if (name == "component_swap") return ScenarioFamily::component_swap;
    if (name == "contraction") return ScenarioFamily::contraction;
    if (name == "identity") return ScenarioFamily::identity;
    throw Error(errkind::invalid_argument, "unknown scenario family '" + name + "'");
}

namespace {

double uniform_in(CounterRng& rng, double lo, double hi) {
    return lo + (hi - lo) * rng.next_unit();
}

GaussianMixtureModel random_mixture(CounterRng& rng, std::size_t dim, std::size_t min_components) {
    const std::size_t k =
        std::max<std::size_t>(min_components, 1 + static_cast<std::size_t>(rng.next_u64() % 3));
    std::vector<GmComponent> comps(k);
    double weight_sum = 0.0;
    for (auto& c : comps) {
        c.weight = uniform_in(rng, 0.5, 1.5);
        weight_sum += c.weight;
    }
    for (auto& c : comps) {
        c.weight /= weight_sum;
        c.mean.resize(dim);
        for (auto& m : c.mean) m = uniform_in(rng, -4.0, 4.0);
        Vec var(dim);
        for (auto& v : var) v = uniform_in(rng, 0.5, 2.0);
        c.cov = Covariance::diagonal(std::move(var));
    }
    return GaussianMixtureModel(std::move(comps));
}

GaussianMixtureModel transform_mixture(const GaussianMixtureModel& src, ScenarioFamily family,
                                       const FamilyParams& params, CounterRng& rng) {
    const std::size_t dim = src.dim();
    std::vector<GmComponent> comps = src.components();
    switch (family) {
        case ScenarioFamily::identity:
            break;
        case ScenarioFamily::mean_shift: {
            Vec shift;
            if (params.shift) {
                shift = *params.shift;
                if (shift.size() != dim) {
                    throw Error(errkind::invalid_argument, "mean shift: dimension mismatch");
                }
            } else {
                shift.resize(dim);
                for (auto& x : shift) x = uniform_in(rng, -6.0, 6.0);
            }
            for (auto& c : comps) c.mean = add(c.mean, shift);
            break;
        }
        case ScenarioFamily::anisotropic_stretch: {
            const std::size_t axis =
                params.stretch_axis ? *params.stretch_axis
                                    : static_cast<std::size_t>(rng.next_u64() % dim);
            const double factor =
                params.stretch_factor ? *params.stretch_factor : uniform_in(rng, 1.5, 3.0);
            if (axis >= dim) throw Error(errkind::invalid_argument, "stretch: axis out of range");
            if (!(factor != 0.0) || !std::isfinite(factor)) {
                throw Error(errkind::invalid_argument, "stretch: factor breaks positive-definiteness");
            }
            for (auto& c : comps) {
                c.mean[axis] *= factor;
                if (c.cov.is_diagonal()) {
                    Vec var = c.cov.diagonal_values();
                    var[axis] *= factor * factor;
                    c.cov = Covariance::diagonal(std::move(var));
                } else {
                    Eigen::MatrixXd m = c.cov.dense();
                    m.row(static_cast<Eigen::Index>(axis)) *= factor;
                    m.col(static_cast<Eigen::Index>(axis)) *= factor;
                    c.cov = Covariance::full(m);
                }
            }
            break;
        }
        case ScenarioFamily::rotation: {
            if (dim < 2) throw Error(errkind::invalid_argument, "rotation: needs dimension >= 2");
            const double angle =
                params.rotation_angle ? *params.rotation_angle : uniform_in(rng, 0.5, 1.6);
            const double c0 = std::cos(angle);
            const double s0 = std::sin(angle);
            for (auto& c : comps) {
                const double x = c.mean[0];
                const double y = c.mean[1];
                c.mean[0] = c0 * x - s0 * y;
                c.mean[1] = s0 * x + c0 * y;
            }
            break;
        }
        case ScenarioFamily::component_swap: {
            std::vector<double> weights(comps.size());
            for (std::size_t i = 0; i < comps.size(); ++i) weights[i] = comps[i].weight;
            for (std::size_t i = 0; i < comps.size(); ++i) {
                comps[i].weight = weights[comps.size() - 1 - i];
            }
            break;
        }
        case ScenarioFamily::contraction: {
            const double factor =
                params.contraction_factor ? *params.contraction_factor : uniform_in(rng, 0.2, 0.6);
            if (!(factor > 0.0)) {
                throw Error(errkind::invalid_argument,
                            "contraction: factor breaks positive-definiteness");
            }
            for (auto& c : comps) c.cov = c.cov.scaled(factor);
            break;
        }
    }
    return GaussianMixtureModel(std::move(comps));
}

}  // namespace

Scenario make_scenario(const ScenarioSpec& spec, Seed seed) {
    CounterRng model_rng(derive_seed(seed, "scenario-model"));
    const std::size_t min_components = spec.family == ScenarioFamily::component_swap ? 2 : 1;
    GaussianMixtureModel gm_src =
        spec.base ? *spec.base : random_mixture(model_rng, spec.dim, min_components);
    GaussianMixtureModel gm_tar = transform_mixture(gm_src, spec.family, spec.params, model_rng);

    CounterRng sample_rng(derive_seed(seed, "source-samples"));
    std::vector<Vec> samples;
    samples.reserve(spec.sample_count);
    for (std::size_t k = 0; k < spec.sample_count; ++k) samples.push_back(gm_src.sample(sample_rng));

    return Scenario{spec.name.empty() ? to_string(spec.family) : spec.name,
                    spec.category.empty() ? to_string(spec.family) : spec.category,
                    std::move(gm_src), std::move(gm_tar), std::move(samples), seed};
}

AnalyticGmmField make_scenario_field(const Scenario& scenario) {
    std::map<std::string, GaussianMixtureModel> models;
    models.emplace(source_condition().id(), scenario.gm_src);
    models.emplace(target_condition().id(), scenario.gm_tar);
    return AnalyticGmmField(std::move(models));
}

std::vector<Scenario> make_suite(const SuiteConfig& config) {
    std::vector<Scenario> suite;
    for (const auto& [family, count] : config.family_counts) {
        for (std::size_t i = 0; i < count; ++i) {
            ScenarioSpec spec;
            char name[64];
            std::snprintf(name, sizeof(name), "%s_%03zu", to_string(family).c_str(), i);
            spec.name = name;
            spec.category = to_string(family);
            spec.family = family;
            spec.dim = config.dim;
            spec.sample_count = config.samples_per_scenario;
            suite.push_back(make_scenario(spec, derive_seed(config.seed, to_string(family), i)));
        }
    }
    return suite;
}

Json to_json(const SuiteConfig& config) {
    Json families = Json::array();
    for (const auto& [family, count] : config.family_counts) {
        families.push_back(Json{{"family", to_string(family)}, {"count", count}});
    }
    return Json{{"seed", config.seed},
                {"dim", config.dim},
                {"samples_per_scenario", config.samples_per_scenario},
                {"families", std::move(families)}};
}

SuiteConfig suite_config_from_json(const Json& j) {
    SuiteConfig config;
    if (j.contains("seed")) config.seed = j.at("seed").get<Seed>();
    if (j.contains("dim")) config.dim = j.at("dim").get<std::size_t>();
    if (j.contains("samples_per_scenario")) {
        config.samples_per_scenario = j.at("samples_per_scenario").get<std::size_t>();
    }
    if (j.contains("families")) {
        config.family_counts.clear();
        for (const auto& f : j.at("families")) {
            config.family_counts.emplace_back(
                scenario_family_from_string(f.at("family").get<std::string>()),
                f.at("count").get<std::size_t>());
        }
    }
    return config;
}

Json to_json(const ScenarioSpec& spec) {
    Json j;
    j["name"] = spec.name;
    j["category"] = spec.category;
    j["family"] = to_string(spec.family);
    j["dim"] = spec.dim;
    j["sample_count"] = spec.sample_count;
    if (spec.base) j["base"] = to_json(*spec.base);
    Json params = Json::object();
    if (spec.params.shift) params["shift"] = *spec.params.shift;
    if (spec.params.stretch_axis) params["stretch_axis"] = *spec.params.stretch_axis;
    if (spec.params.stretch_factor) params["stretch_factor"] = *spec.params.stretch_factor;
    if (spec.params.rotation_angle) params["rotation_angle"] = *spec.params.rotation_angle;
    if (spec.params.contraction_factor) {
        params["contraction_factor"] = *spec.params.contraction_factor;
    }
    j["params"] = std::move(params);
    return j;
}

ScenarioSpec scenario_spec_from_json(const Json& j) {
    ScenarioSpec spec;
    if (j.contains("name")) spec.name = j.at("name").get<std::string>();
    if (j.contains("category")) spec.category = j.at("category").get<std::string>();
    if (j.contains("family")) {
        spec.family = scenario_family_from_string(j.at("family").get<std::string>());
    }
    if (j.contains("dim")) spec.dim = j.at("dim").get<std::size_t>();
    if (j.contains("sample_count")) spec.sample_count = j.at("sample_count").get<std::size_t>();
    if (j.contains("base")) spec.base = gmm_from_json(j.at("base"));
    if (j.contains("params")) {
        const auto& p = j.at("params");
        if (p.contains("shift")) spec.params.shift = p.at("shift").get<Vec>();
        if (p.contains("stretch_axis")) {
            spec.params.stretch_axis = p.at("stretch_axis").get<std::size_t>();
        }
        if (p.contains("stretch_factor")) {
            spec.params.stretch_factor = p.at("stretch_factor").get<double>();
        }
        if (p.contains("rotation_angle")) {
            spec.params.rotation_angle = p.at("rotation_angle").get<double>();
        }
        if (p.contains("contraction_factor")) {
            spec.params.contraction_factor = p.at("contraction_factor").get<double>();
        }
    }
    return spec;
}

}  // namespace flowlab
