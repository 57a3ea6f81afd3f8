// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "flowlab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "flowlab/csv.hpp"
#include "flowlab/diag.hpp"
#include "flowlab/digest.hpp"
#include "flowlab/editor.hpp"
#include "flowlab/error.hpp"
#include "flowlab/geometry.hpp"
#include "flowlab/parallel.hpp"
#include "flowlab/scenario.hpp"
#include "flowlab/serialize.hpp"
#include "flowlab/svg.hpp"
#include "flowlab/sweep.hpp"
#include "flowlab/tabulated.hpp"
#include "flowlab/version.hpp"

namespace flowlab {

namespace {

namespace fs = std::filesystem;

Json default_scenario_json() {
    // Two-Gaussian demo pair: a unit-covariance source at (-3, 0) shifted to (3, 0).
    return Json{
        {"name", "two_gauss"},
        {"family", "mean_shift"},
        {"dim", 2},
        {"sample_count", 8},
        {"base",
         Json{{"components", Json::array({Json{{"weight", 1.0},
                                               {"mean", Json::array({-3.0, 0.0})},
                                               {"cov_diag", Json::array({1.0, 1.0})}}})}}},
        {"params", Json{{"shift", Json::array({6.0, 0.0})}}},
    };
}

Json default_config() {
    Json j;
    j["seed"] = 7;
    j["T"] = 28;
    j["grid"] = nullptr;
    j["n_max"] = 20;
    j["omega_src"] = 3.5;
    j["omega_tar"] = 3.5;
    j["init_mode"] = "noisy_source";
    j["variant"] = "flowslider";
    j["s"] = 1.0;
    j["strengths"] = Json::array({1.0, 2.0, 3.0, 4.0, 5.0});
    j["variants"] = Json::array({"flowslider"});
    j["omega_tar_sweep"] = Json::array({1.5, 3.5, 5.5, 7.5, 9.5});
    j["n_max_sweep"] = Json::array({20, 22, 24, 26, 28});
    j["reverse_strengths"] = Json::array({-3.0, -1.0, 0.0, 1.0, 3.0});
    j["workers"] = 0;  // 0 = available parallelism
    j["out_dir"] = "out";
    j["sample_index"] = 0;
    j["count"] = 8;
    j["condition"] = "src";
    j["guided"] = false;
    j["dump_trajectories"] = "auto";
    j["x_metric"] = "dist_euclid";
    j["record_decomposition"] = true;
    j["scenario"] = nullptr;
    j["suite"] = nullptr;
    return j;
}

struct Resolved {
    Json config;
    std::vector<std::pair<std::string, std::string>> inputs;  // path, digest

    Seed seed() const { return config.at("seed").get<Seed>(); }
    unsigned workers() const {
        const auto w = config.at("workers").get<unsigned>();
        return w == 0 ? default_workers() : w;
    }
    fs::path out_dir() const { return config.at("out_dir").get<std::string>(); }

    TimeGrid grid() const {
        if (!config.at("grid").is_null()) {
            return TimeGrid::from_times(config.at("grid").get<std::vector<double>>());
        }
        return TimeGrid::uniform(config.at("T").get<int>());
    }

    EditConfig edit_config() const {
        EditConfig cfg;
        cfg.variant = edit_variant_from_string(config.at("variant").get<std::string>());
        cfg.strength = config.at("s").get<double>();
        cfg.grid = grid();
        cfg.edit_start_index = config.at("n_max").get<int>();
        cfg.omega_src = config.at("omega_src").get<double>();
        cfg.omega_tar = config.at("omega_tar").get<double>();
        cfg.init_mode = init_mode_from_string(config.at("init_mode").get<std::string>());
        cfg.seed = seed();
        cfg.record_decomposition = config.at("record_decomposition").get<bool>();
        return cfg;
    }

    Scenario scenario() const {
        Json spec_json =
            config.at("scenario").is_null() ? default_scenario_json() : config.at("scenario");
        const ScenarioSpec spec = scenario_spec_from_json(spec_json);
        return make_scenario(spec, derive_seed(seed(), "scenario"));
    }

    std::vector<Scenario> scenarios() const {
        if (config.at("suite").is_null()) return {scenario()};
        Json suite_json = config.at("suite");
        SuiteConfig suite = suite_config_from_json(suite_json);
        if (!suite_json.contains("seed")) suite.seed = seed();
        return make_suite(suite);
    }

    SweepSpec sweep_spec() const {
        SweepSpec spec;
        spec.strengths = config.at("strengths").get<std::vector<double>>();
        spec.variants.clear();
        for (const auto& v : config.at("variants")) {
            spec.variants.push_back(edit_variant_from_string(v.get<std::string>()));
        }
        spec.omega_tar_sweep = config.at("omega_tar_sweep").get<std::vector<double>>();
        spec.n_max_sweep = config.at("n_max_sweep").get<std::vector<int>>();
        spec.base = edit_config();
        return spec;
    }
};

// Writes outputs under one directory and records content digests for the manifest.
class OutputCollector {
public:
    explicit OutputCollector(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

    void add_text(const std::string& name, const std::string& content) {
        const fs::path path = dir_ / name;
        fs::create_directories(path.parent_path());
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error(errkind::io, "cannot write '" + path.string() + "'");
        out << content;
        out.close();
        entries_.emplace_back(name, sha256_hex(content));
    }

    void add_csv(const std::string& name, const CsvTable& table) { add_text(name, table.to_string()); }

    void add_json(const std::string& name, const Json& j) { add_text(name, j.dump(2) + "\n"); }

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
    const fs::path& dir() const { return dir_; }

private:
    fs::path dir_;
    std::vector<std::pair<std::string, std::string>> entries_;
};

void write_manifest(OutputCollector& outputs, const Resolved& resolved, const std::string& command) {
    Json manifest;
    manifest["tool"] = std::string(kToolName);
    manifest["version"] = std::string(kToolVersion);
    manifest["command"] = command;
    manifest["seed"] = resolved.seed();
    manifest["config"] = resolved.config;
    Json inputs = Json::array();
    for (const auto& [path, digest] : resolved.inputs) {
        inputs.push_back(Json{{"path", path}, {"sha256", digest}});
    }
    manifest["inputs"] = std::move(inputs);
    Json outs = Json::array();
    for (const auto& [name, digest] : outputs.entries()) {
        outs.push_back(Json{{"path", name}, {"sha256", digest}});
    }
    manifest["outputs"] = std::move(outs);
    write_json_file(outputs.dir() / ("manifest_" + command + ".json"), manifest);
}

// ---- CSV assembly -----------------------------------------------------------

CsvTable detail_csv(const std::vector<MetricRow>& rows) {
    CsvTable t;
    t.columns = {"scenario", "sample",      "variant",     "s",
                 "edit_effect", "dir_similarity", "dist_euclid", "dist_cosfeat",
                 "dist_mahal",  "logdens_gap",    "error"};
    for (const auto& r : rows) {
        t.rows.push_back({r.scenario, std::to_string(r.sample), r.variant, format_double(r.s),
                          format_optional(r.edit_effect), format_optional(r.dir_similarity),
                          format_optional(r.dist_euclid), format_optional(r.dist_cosfeat),
                          format_optional(r.dist_mahal), format_optional(r.logdens_gap), r.error});
    }
    return t;
}

CsvTable summary_csv(const std::vector<AggregateRow>& rows, const std::string& key_column) {
    CsvTable t;
    t.columns = {key_column,
                 "variant",
                 "mono",
                 "smooth",
                 "mean_edit_effect",
                 "mean_dist_euclid",
                 "mean_dist_cosfeat",
                 "mean_dist_mahal",
                 "mean_logdens_gap"};
    for (const auto& r : rows) {
        t.rows.push_back({r.scenario, r.variant, format_optional(r.mono), format_optional(r.smooth),
                          format_optional(r.mean_edit_effect), format_optional(r.mean_dist_euclid),
                          format_optional(r.mean_dist_cosfeat), format_optional(r.mean_dist_mahal),
                          format_optional(r.mean_logdens_gap)});
    }
    return t;
}

CsvTable angles_csv(const std::vector<AngleSeries>& series) {
    CsvTable t;
    t.columns = {"run", "step", "t", "theta_deg", "norm_fid", "norm_steer"};
    for (const auto& s : series) {
        for (const auto& e : s.entries) {
            t.rows.push_back({s.run_id, std::to_string(e.step), format_double(e.t),
                              format_double(e.theta_deg), format_double(e.norm_fid),
                              format_double(e.norm_steer)});
        }
    }
    return t;
}

CsvTable angle_series_csv(const AngleSeries& series) {
    CsvTable t;
    t.columns = {"step", "t", "theta_deg", "norm_fid", "norm_steer"};
    for (const auto& e : series.entries) {
        t.rows.push_back({std::to_string(e.step), format_double(e.t), format_double(e.theta_deg),
                          format_double(e.norm_fid), format_double(e.norm_steer)});
    }
    return t;
}

CsvTable angle_stats_csv(const AngleReport& report) {
    CsvTable t;
    t.columns = {"step", "count", "mean_theta", "sd_theta", "min_theta", "max_theta"};
    for (const auto& s : report.per_step) {
        t.rows.push_back({std::to_string(s.step), std::to_string(s.count), format_double(s.mean),
                          format_double(s.sd), format_double(s.min), format_double(s.max)});
    }
    return t;
}

CsvTable angle_hist_csv(const AngleReport& report) {
    CsvTable t;
    t.columns = {"bin_lo", "bin_hi", "count"};
    for (std::size_t b = 0; b < report.histogram.size(); ++b) {
        t.rows.push_back({format_double(static_cast<double>(b) * report.bin_width),
                          format_double(static_cast<double>(b + 1) * report.bin_width),
                          std::to_string(report.histogram[b])});
    }
    return t;
}

// Per-(variant, s) means across all ok rows; the trade-off curve input.
CsvTable tradeoff_csv(const std::vector<MetricRow>& rows) {
    struct Acc {
        std::size_t n = 0;
        double effect = 0, euclid = 0, cosfeat = 0, mahal = 0, gap = 0;
    };
    std::map<std::pair<std::string, double>, Acc> acc;
    for (const auto& r : rows) {
        if (!r.ok() || !r.edit_effect || !r.dist_euclid) continue;
        auto& a = acc[{r.variant, r.s}];
        ++a.n;
        a.effect += *r.edit_effect;
        a.euclid += *r.dist_euclid;
        a.cosfeat += *r.dist_cosfeat;
        a.mahal += *r.dist_mahal;
        a.gap += *r.logdens_gap;
    }
    CsvTable t;
    t.columns = {"series", "s", "edit_effect", "dist_euclid", "dist_cosfeat", "dist_mahal",
                 "logdens_gap"};
    for (const auto& [key, a] : acc) {
        const double n = static_cast<double>(a.n);
        t.rows.push_back({key.first, format_double(key.second), format_double(a.effect / n),
                          format_double(a.euclid / n), format_double(a.cosfeat / n),
                          format_double(a.mahal / n), format_double(a.gap / n)});
    }
    return t;
}

CsvTable trajectory_csv_for_result(const EditResult& result) {
    CsvTable t;
    t.columns = {"series", "step", "t", "z0", "z1"};
    auto coord = [](const Vec& v, std::size_t i) { return v.size() > i ? v[i] : 0.0; };
    for (const auto& rec : result.steps) {
        t.rows.push_back({"src", std::to_string(rec.index), format_double(rec.t),
                          format_double(coord(rec.z_src, 0)), format_double(coord(rec.z_src, 1))});
    }
    t.rows.push_back({"src", "0", format_double(0.0), format_double(coord(result.x_src, 0)),
                      format_double(coord(result.x_src, 1))});
    for (const auto& rec : result.steps) {
        t.rows.push_back({"edit", std::to_string(rec.index), format_double(rec.t),
                          format_double(coord(rec.z_edit, 0)), format_double(coord(rec.z_edit, 1))});
    }
    t.rows.push_back({"edit", "0", format_double(0.0), format_double(coord(result.x_edit, 0)),
                      format_double(coord(result.x_edit, 1))});
    return t;
}

CsvTable trajectories_csv_for_results(const std::vector<EditResult>& results) {
    CsvTable t;
    t.columns = {"series", "step", "t", "z0", "z1"};
    auto coord = [](const Vec& v, std::size_t i) { return v.size() > i ? v[i] : 0.0; };
    for (const auto& result : results) {
        const std::string series = "s=" + format_double(result.config.strength);
        for (const auto& rec : result.steps) {
            t.rows.push_back({series, std::to_string(rec.index), format_double(rec.t),
                              format_double(coord(rec.z_edit, 0)),
                              format_double(coord(rec.z_edit, 1))});
        }
        t.rows.push_back({series, "0", format_double(0.0), format_double(coord(result.x_edit, 0)),
                          format_double(coord(result.x_edit, 1))});
    }
    return t;
}

std::string sanitize_filename(std::string name) {
    for (char& c : name) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '_' ||
              c == '+')) {
            c = '_';
        }
    }
    return name;
}

// ---- subcommands ------------------------------------------------------------

void cmd_sample(const Resolved& resolved) {
    OutputCollector outputs(resolved.out_dir());
    const Scenario scenario = resolved.scenario();
    const AnalyticGmmField field = make_scenario_field(scenario);
    const std::string cond_name = resolved.config.at("condition").get<std::string>();
    const Condition condition =
        cond_name == "null" ? Condition::null_condition() : Condition(cond_name);
    const TimeGrid grid = resolved.grid();
    const int count = resolved.config.at("count").get<int>();
    const bool guided = resolved.config.at("guided").get<bool>();

    CfgField cfg(field, 1.0);
    cfg.set_scale(source_condition(), resolved.config.at("omega_src").get<double>());
    cfg.set_scale(target_condition(), resolved.config.at("omega_tar").get<double>());
    const ConditionedVelocityField& active = guided
        ? static_cast<const ConditionedVelocityField&>(cfg)
        : static_cast<const ConditionedVelocityField&>(field);

    std::vector<GenerationRun> runs(static_cast<std::size_t>(count));
    parallel_for(runs.size(), resolved.workers(), [&](std::size_t k) {
        const Seed noise_seed = derive_seed(scenario.seed, "gen-noise", k);
        runs[k] = generate(active, condition, gaussian_noise(noise_seed, field.dim()), grid,
                           noise_seed);
    });

    CsvTable finals;
    finals.columns = {"sample"};
    for (std::size_t i = 0; i < field.dim(); ++i) finals.columns.push_back("z" + std::to_string(i));
    CsvTable trajectories;
    trajectories.columns = {"series", "step", "t", "z0", "z1"};
    auto coord = [](const Vec& v, std::size_t i) { return v.size() > i ? v[i] : 0.0; };
    for (std::size_t k = 0; k < runs.size(); ++k) {
        outputs.add_json("trajectory_" + std::to_string(k) + ".json", to_json(runs[k]));
        std::vector<std::string> row{std::to_string(k)};
        for (double x : runs[k].final_state()) row.push_back(format_double(x));
        finals.rows.push_back(std::move(row));
        const std::string series = "run_" + std::to_string(k);
        for (int i = runs[k].grid.step_count(); i >= 0; --i) {
            const Vec& z = runs[k].states[static_cast<std::size_t>(i)];
            trajectories.rows.push_back({series, std::to_string(i), format_double(runs[k].grid.at(i)),
                                         format_double(coord(z, 0)), format_double(coord(z, 1))});
        }
    }
    outputs.add_csv("finals.csv", finals);
    outputs.add_csv("trajectories.csv", trajectories);
    outputs.add_text("trajectory2d.svg",
                     render_plot_text(PlotKind::trajectory2d, trajectories,
                                      PlotOptions{.title = "generation trajectories"}));
    write_manifest(outputs, resolved, "sample");
}

void cmd_edit(const Resolved& resolved) {
    OutputCollector outputs(resolved.out_dir());
    const Scenario scenario = resolved.scenario();
    const AnalyticGmmField field = make_scenario_field(scenario);
    const int sample = resolved.config.at("sample_index").get<int>();
    if (sample < 0 || static_cast<std::size_t>(sample) >= scenario.source_samples.size()) {
        throw Error(errkind::invalid_argument, "sample index out of range");
    }
    EditConfig config = resolved.edit_config();
    config.seed = derive_seed(scenario.seed, "noise", static_cast<std::uint64_t>(sample));
    const EditResult result =
        run_edit(field, scenario.source_samples[static_cast<std::size_t>(sample)],
                 source_condition(), target_condition(), config,
                 scenario.name + "__smp" + std::to_string(sample));

    outputs.add_json("edit_result.json", to_json(result));
    outputs.add_csv("angles.csv", angle_series_csv(angle_series(result)));
    const CsvTable trajectory = trajectory_csv_for_result(result);
    outputs.add_csv("trajectory.csv", trajectory);
    outputs.add_text("trajectory2d.svg",
                     render_plot_text(PlotKind::trajectory2d, trajectory,
                                      PlotOptions{.title = "edit trajectory"}));
    write_manifest(outputs, resolved, "edit");
}

void cmd_sweep(const Resolved& resolved) {
    OutputCollector outputs(resolved.out_dir());
    const std::vector<Scenario> scenarios = resolved.scenarios();
    const SweepSpec spec = resolved.sweep_spec();
    const std::string dump = resolved.config.at("dump_trajectories").get<std::string>();
    const bool keep = dump == "all" || (dump == "auto" && scenarios.size() == 1);

    std::vector<MetricRow> rows;
    std::vector<AggregateRow> aggregates;
    std::vector<AngleSeries> angles;
    std::vector<EditResult> kept;
    bool complete = true;
    for (const auto& scenario : scenarios) {
        const AnalyticGmmField field = make_scenario_field(scenario);
        SweepOptions options;
        options.workers = resolved.workers();
        options.keep_results = keep;
        SweepReport report = run_sweep(scenario, spec, field, options);
        complete = complete && report.complete;
        std::move(report.rows.begin(), report.rows.end(), std::back_inserter(rows));
        std::move(report.aggregates.begin(), report.aggregates.end(),
                  std::back_inserter(aggregates));
        std::move(report.angles.begin(), report.angles.end(), std::back_inserter(angles));
        std::move(report.results.begin(), report.results.end(), std::back_inserter(kept));
    }

    outputs.add_csv("detail.csv", detail_csv(rows));
    outputs.add_csv("summary.csv", summary_csv(aggregates, "scenario"));
    outputs.add_csv("suite_rollup.csv",
                    summary_csv(rollup_aggregates(rows, aggregates, scenarios), "scope"));
    const CsvTable angle_table = angles_csv(angles);
    outputs.add_csv("angles.csv", angle_table);
    const AngleReport report = angle_report_from_series(angles);
    outputs.add_csv("angle_stats.csv", angle_stats_csv(report));
    outputs.add_csv("angle_hist.csv", angle_hist_csv(report));
    outputs.add_text("angle_hist.svg", render_plot_text(PlotKind::angle_hist, angle_table,
                                                        PlotOptions{.title = "component angles"}));
    const CsvTable tradeoff = tradeoff_csv(rows);
    outputs.add_csv("tradeoff.csv", tradeoff);
    PlotOptions tradeoff_options;
    tradeoff_options.title = "effect vs preservation";
    tradeoff_options.x_column = resolved.config.at("x_metric").get<std::string>();
    outputs.add_text("tradeoff.svg", render_plot_text(PlotKind::tradeoff, tradeoff, tradeoff_options));

    if (keep && !kept.empty()) {
        for (const auto& result : kept) {
            outputs.add_json("results/" + sanitize_filename(result.run_id) + ".json",
                             to_json(result));
        }
        std::vector<EditResult> first_sample;
        for (const auto& r : kept) {
            if (r.run_id.find("__smp0__") != std::string::npos &&
                r.config.variant == spec.variants.front()) {
                first_sample.push_back(r);
            }
        }
        if (!first_sample.empty()) {
            const CsvTable trajectories = trajectories_csv_for_results(first_sample);
            outputs.add_csv("trajectories.csv", trajectories);
            outputs.add_text("trajectory2d.svg",
                             render_plot_text(PlotKind::trajectory2d, trajectories,
                                              PlotOptions{.title = "edit trajectories"}));
        }
    }
    if (!complete) warn("sweep: some cells failed; see the error column in detail.csv");
    write_manifest(outputs, resolved, "sweep");
}

void cmd_ablate(const Resolved& resolved) {
    OutputCollector outputs(resolved.out_dir());
    const std::vector<Scenario> scenarios = resolved.scenarios();
    SweepSpec spec = resolved.sweep_spec();
    spec.variants = {EditVariant::flowslider, EditVariant::naive_scaling,
                     EditVariant::linear_interp};

    std::vector<MetricRow> rows;
    std::vector<AggregateRow> aggregates;
    for (const auto& scenario : scenarios) {
        const AnalyticGmmField field = make_scenario_field(scenario);
        SweepOptions options;
        options.workers = resolved.workers();
        for (int pass = 0; pass < 3; ++pass) {
            SweepReport report =
                pass == 0 ? run_sweep(scenario, spec, field, options)
                : pass == 1
                    ? run_knob_sweep(scenario, spec, KnobKind::cfg_omega_tar, field, options)
                    : run_knob_sweep(scenario, spec, KnobKind::edit_window, field, options);
            std::move(report.rows.begin(), report.rows.end(), std::back_inserter(rows));
            std::move(report.aggregates.begin(), report.aggregates.end(),
                      std::back_inserter(aggregates));
        }
    }
    outputs.add_csv("ablate_detail.csv", detail_csv(rows));
    outputs.add_csv("ablate_summary.csv", summary_csv(aggregates, "scenario"));
    const CsvTable tradeoff = tradeoff_csv(rows);
    outputs.add_csv("ablate_tradeoff.csv", tradeoff);
    PlotOptions options;
    options.title = "ablation trade-off";
    options.x_column = resolved.config.at("x_metric").get<std::string>();
    outputs.add_text("ablate_tradeoff.svg", render_plot_text(PlotKind::tradeoff, tradeoff, options));
    write_manifest(outputs, resolved, "ablate");
}

void cmd_reverse(const Resolved& resolved) {
    OutputCollector outputs(resolved.out_dir());
    const Scenario scenario = resolved.scenario();
    const AnalyticGmmField field = make_scenario_field(scenario);
    EditConfig base = resolved.edit_config();
    base.variant = EditVariant::flowslider;
    SweepOptions options;
    options.workers = resolved.workers();
    const ReverseStudy study = reverse_study(
        scenario, resolved.config.at("reverse_strengths").get<std::vector<double>>(), base, field,
        options);

    CsvTable detail;
    detail.columns = {"s", "sample", "projection"};
    std::map<double, std::pair<double, std::size_t>> means;
    for (const auto& row : study.rows) {
        detail.rows.push_back(
            {format_double(row.s), std::to_string(row.sample), format_double(row.projection)});
        auto& [sum, count] = means[row.s];
        sum += row.projection;
        ++count;
    }
    CsvTable summary;
    summary.columns = {"s", "mean_projection"};
    for (const auto& [s, acc] : means) {
        summary.rows.push_back(
            {format_double(s), format_double(acc.first / static_cast<double>(acc.second))});
    }
    outputs.add_csv("reverse_detail.csv", detail);
    outputs.add_csv("reverse_summary.csv", summary);
    write_manifest(outputs, resolved, "reverse");
}

void cmd_angles(Resolved& resolved, const std::vector<std::string>& result_files,
                const std::vector<std::string>& angle_files) {
    OutputCollector outputs(resolved.out_dir());
    std::vector<AngleSeries> series;
    for (const auto& file : result_files) {
        resolved.inputs.emplace_back(file, sha256_hex_file(file));
        series.push_back(angle_series(edit_result_from_json(load_json_file(file))));
    }
    for (const auto& file : angle_files) {
        resolved.inputs.emplace_back(file, sha256_hex_file(file));
        const CsvTable table = CsvTable::read_file(file);
        const std::size_t step_col = table.column_index("step");
        const std::size_t t_col = table.column_index("t");
        const std::size_t theta_col = table.column_index("theta_deg");
        AngleSeries s;
        s.run_id = file;
        for (const auto& row : table.rows) {
            if (row[theta_col].empty()) continue;
            AngleEntry e;
            e.step = static_cast<int>(parse_double(row[step_col]));
            e.t = parse_double(row[t_col]);
            e.theta_deg = parse_double(row[theta_col]);
            s.entries.push_back(e);
        }
        series.push_back(std::move(s));
    }
    if (series.empty()) {
        throw Error(errkind::invalid_argument, "angles: no --results or --angles inputs given");
    }
    const AngleReport report = angle_report_from_series(series);
    outputs.add_csv("angles.csv", angles_csv(series));
    outputs.add_csv("angle_stats.csv", angle_stats_csv(report));
    outputs.add_csv("angle_hist.csv", angle_hist_csv(report));
    outputs.add_text("angle_hist.svg", render_plot_text(PlotKind::angle_hist, angles_csv(series),
                                                        PlotOptions{.title = "component angles"}));
    write_manifest(outputs, resolved, "angles");
}

void cmd_plot(Resolved& resolved, const std::string& kind_name, const std::string& input,
              const std::string& output) {
    if (input.empty()) throw Error(errkind::invalid_argument, "plot: missing input csv");
    const PlotKind kind = plot_kind_from_string(kind_name);
    resolved.inputs.emplace_back(input, sha256_hex_file(input));
    OutputCollector outputs(resolved.out_dir());
    const CsvTable data = CsvTable::read_file(input);
    PlotOptions options;
    options.title = to_string(kind);
    options.x_column = resolved.config.at("x_metric").get<std::string>();
    const std::string name = output.empty() ? to_string(kind) + ".svg" : output;
    outputs.add_text(name, render_plot_text(kind, data, options));
    write_manifest(outputs, resolved, "plot");
}

// ---- option plumbing --------------------------------------------------------

struct FlagStore {
    std::uint64_t seed = 7;
    int T = 28;
    int n_max = 20;
    double omega_src = 3.5;
    double omega_tar = 3.5;
    std::string init_mode = "noisy_source";
    std::string variant = "flowslider";
    double s = 1.0;
    std::vector<double> strengths;
    std::vector<std::string> variants;
    std::vector<double> omega_tar_sweep;
    std::vector<int> n_max_sweep;
    std::vector<double> reverse_strengths;
    unsigned workers = 0;
    std::string out_dir = "out";
    int sample_index = 0;
    int count = 8;
    std::string condition = "src";
    bool guided = false;
    std::string dump = "auto";
    std::string x_metric = "dist_euclid";
    std::string config_path;
    std::string scenario_path;
    std::string suite;  // "default" or a path
    // plot/angles inputs
    std::string kind = "angle_hist";
    std::string plot_in;
    std::string plot_out;
    std::vector<std::string> result_files;
    std::vector<std::string> angle_files;
};

void add_common_options(CLI::App* sub, FlagStore& flags) {
    sub->add_option("--seed", flags.seed, "base seed");
    sub->add_option("--T", flags.T, "uniform time grid step count");
    sub->add_option("--n-max", flags.n_max, "edit start index");
    sub->add_option("--omega-src", flags.omega_src, "source guidance scale");
    sub->add_option("--omega-tar", flags.omega_tar, "target guidance scale");
    sub->add_option("--init-mode", flags.init_mode, "noisy_source|clean_source");
    sub->add_option("--workers", flags.workers, "worker threads (0 = available parallelism)");
    sub->add_option("--out-dir", flags.out_dir, "output directory");
    sub->add_option("--config", flags.config_path, "JSON config file (flags override)");
    sub->add_option("--scenario", flags.scenario_path, "scenario spec JSON file");
    sub->add_option("--suite", flags.suite, "'default' or a suite config JSON file");
}

// Applies a flag to the resolved config only when the user passed it.
template <typename T>
void apply_if_set(CLI::App* sub, const std::string& flag, Json& config, const std::string& key,
                  const T& value) {
    if (sub->count(flag) > 0) config[key] = value;
}

Resolved resolve(CLI::App* sub, FlagStore& flags) {
    Resolved resolved;
    resolved.config = default_config();
    if (sub->count("--config") > 0) {
        Json file = load_json_file(flags.config_path);
        resolved.inputs.emplace_back(flags.config_path, sha256_hex_file(flags.config_path));
        // A manifest is itself a valid config carrier.
        if (file.contains("tool") && file.contains("config")) file = file.at("config");
        for (const auto& [key, value] : file.items()) resolved.config[key] = value;
    }
    apply_if_set(sub, "--seed", resolved.config, "seed", flags.seed);
    if (sub->count("--T") > 0) {
        resolved.config["T"] = flags.T;
        resolved.config["grid"] = nullptr;
    }
    apply_if_set(sub, "--n-max", resolved.config, "n_max", flags.n_max);
    apply_if_set(sub, "--omega-src", resolved.config, "omega_src", flags.omega_src);
    apply_if_set(sub, "--omega-tar", resolved.config, "omega_tar", flags.omega_tar);
    apply_if_set(sub, "--init-mode", resolved.config, "init_mode", flags.init_mode);
    apply_if_set(sub, "--workers", resolved.config, "workers", flags.workers);
    apply_if_set(sub, "--out-dir", resolved.config, "out_dir", flags.out_dir);
    if (sub->get_option_no_throw("--variant") && sub->count("--variant") > 0) {
        resolved.config["variant"] = flags.variant;
    }
    if (sub->get_option_no_throw("--s") && sub->count("--s") > 0) resolved.config["s"] = flags.s;
    if (sub->get_option_no_throw("--strengths") && sub->count("--strengths") > 0) {
        resolved.config["strengths"] = flags.strengths;
    }
    if (sub->get_option_no_throw("--variants") && sub->count("--variants") > 0) {
        resolved.config["variants"] = flags.variants;
    }
    if (sub->get_option_no_throw("--omega-tar-sweep") && sub->count("--omega-tar-sweep") > 0) {
        resolved.config["omega_tar_sweep"] = flags.omega_tar_sweep;
    }
    if (sub->get_option_no_throw("--n-max-sweep") && sub->count("--n-max-sweep") > 0) {
        resolved.config["n_max_sweep"] = flags.n_max_sweep;
    }
    if (sub->get_option_no_throw("--strengths-reverse") && sub->count("--strengths-reverse") > 0) {
        resolved.config["reverse_strengths"] = flags.reverse_strengths;
    }
    if (sub->get_option_no_throw("--sample") && sub->count("--sample") > 0) {
        resolved.config["sample_index"] = flags.sample_index;
    }
    if (sub->get_option_no_throw("--count") && sub->count("--count") > 0) {
        resolved.config["count"] = flags.count;
    }
    if (sub->get_option_no_throw("--condition") && sub->count("--condition") > 0) {
        resolved.config["condition"] = flags.condition;
    }
    if (sub->get_option_no_throw("--guided") && sub->count("--guided") > 0) {
        resolved.config["guided"] = flags.guided;
    }
    if (sub->get_option_no_throw("--dump-trajectories") && sub->count("--dump-trajectories") > 0) {
        resolved.config["dump_trajectories"] = flags.dump;
    }
    if (sub->get_option_no_throw("--x-metric") && sub->count("--x-metric") > 0) {
        resolved.config["x_metric"] = flags.x_metric;
    }
    if (sub->count("--scenario") > 0) {
        resolved.config["scenario"] = load_json_file(flags.scenario_path);
        resolved.inputs.emplace_back(flags.scenario_path, sha256_hex_file(flags.scenario_path));
    }
    if (sub->count("--suite") > 0) {
        if (flags.suite == "default") {
            resolved.config["suite"] = to_json(SuiteConfig{});
        } else {
            resolved.config["suite"] = load_json_file(flags.suite);
            resolved.inputs.emplace_back(flags.suite, sha256_hex_file(flags.suite));
        }
    }
    return resolved;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"flowlab: analytic laboratory for strength-controlled flow editing"};
    app.set_version_flag("--version", std::string(kToolName) + " " + std::string(kToolVersion));
    app.require_subcommand(1);
    FlagStore flags;

    CLI::App* sample = app.add_subcommand("sample", "generate from the analytic backbone");
    add_common_options(sample, flags);
    sample->add_option("--count", flags.count, "number of generations");
    sample->add_option("--condition", flags.condition, "src|tar|null");
    sample->add_flag("--guided", flags.guided, "apply guidance while sampling");

    CLI::App* edit = app.add_subcommand("edit", "run one edit");
    add_common_options(edit, flags);
    edit->add_option("--variant", flags.variant, "flowedit|flowslider|naive_scaling|linear_interp");
    edit->add_option("--s", flags.s, "edit strength");
    edit->add_option("--sample", flags.sample_index, "source sample index");

    CLI::App* sweep = app.add_subcommand("sweep", "strength sweep with shared noise");
    add_common_options(sweep, flags);
    sweep->add_option("--strengths", flags.strengths, "strength values")->delimiter(',');
    sweep->add_option("--variants", flags.variants, "edit variants")->delimiter(',');
    sweep->add_option("--dump-trajectories", flags.dump, "none|auto|all");

    CLI::App* angles = app.add_subcommand("angles", "angle statistics from stored runs");
    add_common_options(angles, flags);
    angles->add_option("--results", flags.result_files, "edit result JSON files")->delimiter(',');
    angles->add_option("--angles", flags.angle_files, "angle series CSV files")->delimiter(',');

    CLI::App* ablate = app.add_subcommand("ablate", "update-rule and heuristic-knob studies");
    add_common_options(ablate, flags);
    ablate->add_option("--strengths", flags.strengths, "strength values")->delimiter(',');
    ablate->add_option("--omega-tar-sweep", flags.omega_tar_sweep, "target guidance values")
        ->delimiter(',');
    ablate->add_option("--n-max-sweep", flags.n_max_sweep, "edit-window values")->delimiter(',');
    ablate->add_option("--x-metric", flags.x_metric, "trade-off x axis column");

    CLI::App* reverse = app.add_subcommand("reverse", "negative-strength direction study");
    add_common_options(reverse, flags);
    reverse->add_option("--strengths-reverse", flags.reverse_strengths, "signed strengths incl. 0")
        ->delimiter(',');

    CLI::App* plot = app.add_subcommand("plot", "render a CSV to a deterministic SVG");
    add_common_options(plot, flags);
    plot->add_option("--kind", flags.kind, "angle_hist|tradeoff|trajectory2d");
    plot->add_option("--in", flags.plot_in, "input CSV");
    plot->add_option("--out", flags.plot_out, "output SVG name");
    plot->add_option("--x-metric", flags.x_metric, "trade-off x axis column");
    auto* plot_angles =
        plot->add_option("--angles", flags.plot_in, "angle CSV (sets --kind angle_hist)");
    auto* plot_tradeoff =
        plot->add_option("--tradeoff", flags.plot_in, "trade-off CSV (sets --kind tradeoff)");
    auto* plot_traj =
        plot->add_option("--trajectory", flags.plot_in, "trajectory CSV (sets --kind trajectory2d)");

    std::vector<char*> argv;
    std::vector<std::string> owned = args;
    std::string program = "flowlab";
    argv.push_back(program.data());
    for (auto& a : owned) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion& e) {
        out << app.version() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << "\n";
        return 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        Resolved resolved = resolve(sub, flags);
        if (sub == sample) {
            cmd_sample(resolved);
        } else if (sub == edit) {
            cmd_edit(resolved);
        } else if (sub == sweep) {
            cmd_sweep(resolved);
        } else if (sub == angles) {
            cmd_angles(resolved, flags.result_files, flags.angle_files);
        } else if (sub == ablate) {
            cmd_ablate(resolved);
        } else if (sub == reverse) {
            cmd_reverse(resolved);
        } else if (sub == plot) {
            std::string kind = flags.kind;
            if (plot_angles->count() > 0) kind = "angle_hist";
            if (plot_tradeoff->count() > 0) kind = "tradeoff";
            if (plot_traj->count() > 0) kind = "trajectory2d";
            cmd_plot(resolved, kind, flags.plot_in, flags.plot_out);
        }
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace flowlab
