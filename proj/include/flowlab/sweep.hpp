// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flowlab/editor.hpp"
#include "flowlab/geometry.hpp"
#include "flowlab/metrics.hpp"
#include "flowlab/scenario.hpp"

namespace flowlab {

struct SweepSpec {
    std::vector<double> strengths = {1, 2, 3, 4, 5};
    std::vector<EditVariant> variants = {EditVariant::flowslider};
    std::vector<double> omega_tar_sweep = {1.5, 3.5, 5.5, 7.5, 9.5};
    std::vector<int> n_max_sweep = {20, 22, 24, 26, 28};
    EditConfig base;

    void validate() const;
};

struct MetricRow {
    std::string scenario;
    std::string category;
    int sample = 0;
    std::string variant;
    double s = 0.0;  // strength, or the knob value for knob sweeps
    std::optional<double> edit_effect;
    std::optional<double> dir_similarity;
    std::optional<double> dist_euclid;
    std::optional<double> dist_cosfeat;
    std::optional<double> dist_mahal;
    std::optional<double> logdens_gap;
    std::string error;  // empty when the cell succeeded

    bool ok() const { return error.empty(); }
};

struct AggregateRow {
    std::string scenario;
    std::string variant;
    std::optional<double> mono;
    std::optional<double> smooth;
    std::optional<double> mean_edit_effect;
    std::optional<double> mean_dist_euclid;
    std::optional<double> mean_dist_cosfeat;
    std::optional<double> mean_dist_mahal;
    std::optional<double> mean_logdens_gap;
};

struct SweepOptions {
    unsigned workers = 1;
    bool keep_results = false;
};

struct SweepReport {
    std::vector<MetricRow> rows;
    std::vector<AggregateRow> aggregates;
    std::vector<AngleSeries> angles;
    std::vector<EditResult> results;  // populated only with keep_results
    bool complete = true;
};

// Runs every (sample, variant, strength) cell of the scenario. All strengths
// and variants of one sample consume the identical noise draw.
SweepReport run_sweep(const Scenario& scenario, const SweepSpec& spec,
                      const ConditionedVelocityField& inner, const SweepOptions& options = {});

// Heuristic baseline sweeps: the knob value is mapped onto the strength axis
// (ascending) and the update rule is plain flowedit.
enum class KnobKind { cfg_omega_tar, edit_window };

SweepReport run_knob_sweep(const Scenario& scenario, const SweepSpec& spec, KnobKind kind,
                           const ConditionedVelocityField& inner, const SweepOptions& options = {});

struct AngleStats {
    int step = 0;
    std::size_t count = 0;
    double mean = 0.0;
    double sd = 0.0;  // population standard deviation
    double min = 0.0;
    double max = 0.0;
};

struct AngleReport {
    std::vector<AngleStats> per_step;
    std::vector<std::size_t> histogram;  // default 36 bins over [0, 180] degrees
    double bin_width = 5.0;
    std::size_t total = 0;
};

AngleReport angle_report(const std::vector<EditResult>& results, std::size_t bins = 36);
AngleReport angle_report_from_series(const std::vector<AngleSeries>& series, std::size_t bins = 36);

struct ReverseRow {
    double s = 0.0;
    int sample = 0;
    double projection = 0.0;  // signed displacement along the source->target mean axis
};

struct ReverseStudy {
    Vec axis_unit;
    std::vector<ReverseRow> rows;
};

// Signed projection of x_edit(s) - x_edit(0) onto the unit vector from the
// source mixture mean to the target mixture mean. `strengths` must contain 0.
ReverseStudy reverse_study(const Scenario& scenario, const std::vector<double>& strengths,
                           const EditConfig& base, const ConditionedVelocityField& inner,
                           const SweepOptions& options = {});

// Per-category and pooled rollups of scenario aggregates.
std::vector<AggregateRow> rollup_aggregates(const std::vector<MetricRow>& rows,
                                            const std::vector<AggregateRow>& per_scenario,
                                            const std::vector<Scenario>& scenarios);

}  // namespace flowlab
