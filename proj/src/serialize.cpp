// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "flowlab/serialize.hpp"

#include <fstream>

#include "flowlab/error.hpp"

namespace flowlab {

namespace {

Json vec_to_json(const Vec& v) { return Json(v); }

Vec vec_from_json(const Json& j) { return j.get<Vec>(); }

Json optional_vec_to_json(const std::optional<Vec>& v) {
    return v ? vec_to_json(*v) : Json(nullptr);
}

std::optional<Vec> optional_vec_from_json(const Json& j) {
    if (j.is_null()) return std::nullopt;
    return vec_from_json(j);
}

Json condition_to_json(const Condition& c) {
    return c.is_null() ? Json(nullptr) : Json(c.id());
}

Condition condition_from_json(const Json& j) {
    return j.is_null() ? Condition::null_condition() : Condition(j.get<std::string>());
}

}  // namespace

Json to_json(const TimeGrid& grid) { return Json(grid.times()); }

TimeGrid time_grid_from_json(const Json& j) {
    return TimeGrid::from_times(j.get<std::vector<double>>());
}

Json to_json(const EditConfig& config) {
    Json j;
    j["variant"] = to_string(config.variant);
    j["s"] = config.strength;
    j["grid"] = to_json(config.grid);
    j["n_max"] = config.edit_start_index;
    j["omega_src"] = config.omega_src;
    j["omega_tar"] = config.omega_tar;
    j["init_mode"] = to_string(config.init_mode);
    j["seed"] = config.seed;
    j["record_decomposition"] = config.record_decomposition;
    return j;
}

EditConfig edit_config_from_json(const Json& j) {
    EditConfig config;
    config.variant = edit_variant_from_string(j.at("variant").get<std::string>());
    config.strength = j.at("s").get<double>();
    config.grid = time_grid_from_json(j.at("grid"));
    config.edit_start_index = j.at("n_max").get<int>();
    config.omega_src = j.at("omega_src").get<double>();
    config.omega_tar = j.at("omega_tar").get<double>();
    config.init_mode = init_mode_from_string(j.at("init_mode").get<std::string>());
    config.seed = j.at("seed").get<Seed>();
    config.record_decomposition = j.at("record_decomposition").get<bool>();
    return config;
}

Json to_json(const EditResult& result) {
    Json j;
    j["run_id"] = result.run_id;
    j["config"] = to_json(result.config);
    j["c_src"] = condition_to_json(result.c_src);
    j["c_tar"] = condition_to_json(result.c_tar);
    j["x_src"] = vec_to_json(result.x_src);
    j["eps"] = vec_to_json(result.noise);
    Json steps = Json::array();
    for (const auto& rec : result.steps) {
        Json s;
        s["i"] = rec.index;
        s["t"] = rec.t;
        s["z_src"] = vec_to_json(rec.z_src);
        s["z_tar"] = vec_to_json(rec.z_tar);
        s["z_edit"] = vec_to_json(rec.z_edit);
        s["v_fid"] = optional_vec_to_json(rec.v_fid);
        s["v_steer"] = optional_vec_to_json(rec.v_steer);
        s["v_delta"] = vec_to_json(rec.v_delta);
        s["v_applied"] = vec_to_json(rec.v_applied);
        s["theta_rad"] = rec.theta_rad ? Json(*rec.theta_rad) : Json(nullptr);
        steps.push_back(std::move(s));
    }
    j["steps"] = std::move(steps);
    j["x_edit"] = vec_to_json(result.x_edit);
    return j;
}

EditResult edit_result_from_json(const Json& j) {
    EditResult result;
    result.run_id = j.at("run_id").get<std::string>();
    result.config = edit_config_from_json(j.at("config"));
    result.c_src = condition_from_json(j.at("c_src"));
    result.c_tar = condition_from_json(j.at("c_tar"));
    result.x_src = vec_from_json(j.at("x_src"));
    result.noise = vec_from_json(j.at("eps"));
    for (const auto& s : j.at("steps")) {
        EditStepRecord rec;
        rec.index = s.at("i").get<int>();
        rec.t = s.at("t").get<double>();
        rec.z_src = vec_from_json(s.at("z_src"));
        rec.z_tar = vec_from_json(s.at("z_tar"));
        rec.z_edit = vec_from_json(s.at("z_edit"));
        rec.v_fid = optional_vec_from_json(s.at("v_fid"));
        rec.v_steer = optional_vec_from_json(s.at("v_steer"));
        rec.v_delta = vec_from_json(s.at("v_delta"));
        rec.v_applied = vec_from_json(s.at("v_applied"));
        rec.theta_rad = s.at("theta_rad").is_null()
                            ? std::nullopt
                            : std::optional<double>(s.at("theta_rad").get<double>());
        result.steps.push_back(std::move(rec));
    }
    result.x_edit = vec_from_json(j.at("x_edit"));
    return result;
}

Json to_json(const GenerationRun& run) {
    Json j;
    j["seed"] = run.seed;
    j["condition"] = condition_to_json(run.condition);
    j["grid"] = to_json(run.grid);
    Json states = Json::array();
    for (const auto& s : run.states) states.push_back(vec_to_json(s));
    j["states"] = std::move(states);
    return j;
}

GenerationRun generation_run_from_json(const Json& j) {
    GenerationRun run;
    run.seed = j.at("seed").get<Seed>();
    run.condition = condition_from_json(j.at("condition"));
    run.grid = time_grid_from_json(j.at("grid"));
    for (const auto& s : j.at("states")) run.states.push_back(vec_from_json(s));
    if (run.states.size() != static_cast<std::size_t>(run.grid.step_count()) + 1) {
        throw Error(errkind::parse, "generation run: state count does not match grid");
    }
    return run;
}

Json to_json(const GaussianMixtureModel& gm) {
    Json comps = Json::array();
    for (const auto& c : gm.components()) {
        Json jc;
        jc["weight"] = c.weight;
        jc["mean"] = vec_to_json(c.mean);
        if (c.cov.is_diagonal()) {
            jc["cov_diag"] = vec_to_json(c.cov.diagonal_values());
        } else {
            const Eigen::MatrixXd m = c.cov.dense();
            Json rows = Json::array();
            for (Eigen::Index r = 0; r < m.rows(); ++r) {
                Vec row(static_cast<std::size_t>(m.cols()));
                for (Eigen::Index col = 0; col < m.cols(); ++col) {
                    row[static_cast<std::size_t>(col)] = m(r, col);
                }
                rows.push_back(vec_to_json(row));
            }
            jc["cov"] = std::move(rows);
        }
        comps.push_back(std::move(jc));
    }
    return Json{{"components", std::move(comps)}};
}

GaussianMixtureModel gmm_from_json(const Json& j) {
    std::vector<GmComponent> comps;
    for (const auto& jc : j.at("components")) {
        const double weight = jc.at("weight").get<double>();
        Vec mean = vec_from_json(jc.at("mean"));
        if (jc.contains("cov_diag")) {
            comps.push_back({weight, std::move(mean),
                             Covariance::diagonal(vec_from_json(jc.at("cov_diag")))});
        } else {
            const auto rows = jc.at("cov");
            const auto n = static_cast<Eigen::Index>(rows.size());
            Eigen::MatrixXd m(n, n);
            for (Eigen::Index r = 0; r < n; ++r) {
                const Vec row = vec_from_json(rows[static_cast<std::size_t>(r)]);
                if (row.size() != static_cast<std::size_t>(n)) {
                    throw Error(errkind::parse, "gmm: covariance matrix is not square");
                }
                for (Eigen::Index c = 0; c < n; ++c) m(r, c) = row[static_cast<std::size_t>(c)];
            }
            comps.push_back({weight, std::move(mean), Covariance::full(m)});
        }
    }
    return GaussianMixtureModel(std::move(comps));
}

Json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(errkind::io, "cannot open json file '" + path.string() + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(errkind::parse, "json file '" + path.string() + "': " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errkind::io, "cannot write json file '" + path.string() + "'");
    out << j.dump(2) << "\n";
}

}  // namespace flowlab
