// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "flowlab/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "flowlab/error.hpp"
#include "flowlab/parallel.hpp"

namespace flowlab {

void SweepSpec::validate() const {
    if (strengths.empty()) throw Error(errkind::invalid_argument, "sweep: no strengths");
    for (std::size_t i = 0; i + 1 < strengths.size(); ++i) {
        if (!(strengths[i] < strengths[i + 1])) {
            throw Error(errkind::invalid_argument, "sweep: strengths must strictly increase");
        }
    }
    if (variants.empty()) throw Error(errkind::invalid_argument, "sweep: no variants");
    for (int n : n_max_sweep) {
        if (n < 1 || n > base.grid.step_count()) {
            throw Error(errkind::invalid_argument, "sweep: n_max value outside the grid");
        }
    }
}

namespace {

struct Cell {
    int sample = 0;
    std::string variant_label;
    double axis_value = 0.0;
    EditConfig config;
};

struct CellOutcome {
    MetricRow row;
    std::optional<EditResult> result;
    AngleSeries angles;
};

std::string run_id_for(const Scenario& scenario, const Cell& cell) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s__smp%d__%s__s%.17g", scenario.name.c_str(), cell.sample,
                  cell.variant_label.c_str(), cell.axis_value);
    return buf;
}

std::vector<CellOutcome> run_cells(const Scenario& scenario, const std::vector<Cell>& cells,
                                   const ConditionedVelocityField& inner,
                                   const SweepOptions& options) {
    const NormalizedIdentityFeatures features(
        {{source_condition().id(), scenario.gm_src.mixture_mean()},
         {target_condition().id(), scenario.gm_tar.mixture_mean()}});

    std::vector<CellOutcome> outcomes(cells.size());
    parallel_for(cells.size(), options.workers, [&](std::size_t i) {
        const Cell& cell = cells[i];
        CellOutcome& out = outcomes[i];
        MetricRow& row = out.row;
        row.scenario = scenario.name;
        row.category = scenario.category;
        row.sample = cell.sample;
        row.variant = cell.variant_label;
        row.s = cell.axis_value;
        const Vec& x_src = scenario.source_samples[static_cast<std::size_t>(cell.sample)];
        try {
            EditResult result = run_edit(inner, x_src, source_condition(), target_condition(),
                                         cell.config, run_id_for(scenario, cell));
            const Vec f_src = features.state_feature(x_src);
            const Vec f_edit = features.state_feature(result.x_edit);
            const Vec g_src = features.condition_feature(source_condition());
            const Vec g_tar = features.condition_feature(target_condition());
            row.edit_effect = edit_effect(f_edit, g_tar);
            try {
                row.dir_similarity = directional_similarity(f_src, f_edit, g_src, g_tar);
            } catch (const Error& e) {
                if (e.kind() != errkind::undefined_direction) throw;
            }
            const auto pd = preservation_distances(x_src, result.x_edit, scenario.gm_src, features);
            row.dist_euclid = pd.euclid;
            row.dist_cosfeat = pd.cosine_feature;
            row.dist_mahal = pd.mahalanobis;
            row.logdens_gap = pd.log_density_gap;
            out.angles = angle_series(result);
            out.result = std::move(result);
        } catch (const Error& e) {
            row.error = e.what();
        }
    });
    return outcomes;
}

std::optional<double> mean_of(const std::vector<double>& values) {
    if (values.empty()) return std::nullopt;
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

// Aggregates over the sweep axis; cells of one sample must all be present.
std::vector<AggregateRow> aggregate(const Scenario& scenario,
                                    const std::vector<Cell>& cells,
                                    const std::vector<CellOutcome>& outcomes,
                                    std::size_t axis_size) {
    std::map<std::string, std::vector<std::size_t>> by_variant;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        by_variant[cells[i].variant_label].push_back(i);
    }
    std::vector<AggregateRow> rows;
    for (auto& [variant, idx] : by_variant) {
        AggregateRow agg;
        agg.scenario = scenario.name;
        agg.variant = variant;
        std::vector<double> monos;
        std::vector<double> smooths;
        std::vector<double> effects;
        std::vector<double> euclids;
        std::vector<double> cosfeats;
        std::vector<double> mahals;
        std::vector<double> gaps;

        // idx is cell-order: samples outer, axis inner.
        for (std::size_t base = 0; base + axis_size <= idx.size(); base += axis_size) {
            std::vector<double> effect_series;
            std::vector<double> dist_series;
            std::vector<Vec> points;
            bool sample_ok = true;
            for (std::size_t k = 0; k < axis_size; ++k) {
                const CellOutcome& out = outcomes[idx[base + k]];
                if (!out.row.ok() || !out.row.edit_effect || !out.row.dist_euclid) {
                    sample_ok = false;
                    break;
                }
                effect_series.push_back(*out.row.edit_effect);
                dist_series.push_back(*out.row.dist_euclid);
                if (out.result) points.push_back(out.result->x_edit);
                effects.push_back(*out.row.edit_effect);
                euclids.push_back(*out.row.dist_euclid);
                cosfeats.push_back(*out.row.dist_cosfeat);
                mahals.push_back(*out.row.dist_mahal);
                gaps.push_back(*out.row.logdens_gap);
            }
            if (!sample_ok) continue;
            if (effect_series.size() >= 2) {
                monos.push_back(monotonicity(effect_series, dist_series));
            }
            if (points.size() >= 3) {
                try {
                    smooths.push_back(smoothness(
                        points, [](const Vec& a, const Vec& b) { return norm(sub(a, b)); }));
                } catch (const Error& e) {
                    if (e.kind() != errkind::degenerate_triplet) throw;
                }
            }
        }
        agg.mono = mean_of(monos);
        agg.smooth = mean_of(smooths);
        agg.mean_edit_effect = mean_of(effects);
        agg.mean_dist_euclid = mean_of(euclids);
        agg.mean_dist_cosfeat = mean_of(cosfeats);
        agg.mean_dist_mahal = mean_of(mahals);
        agg.mean_logdens_gap = mean_of(gaps);
        rows.push_back(std::move(agg));
    }
    return rows;
}

SweepReport assemble(const Scenario& scenario, const std::vector<Cell>& cells,
                     std::vector<CellOutcome>&& outcomes, std::size_t axis_size,
                     const SweepOptions& options) {
    SweepReport report;
    report.aggregates = aggregate(scenario, cells, outcomes, axis_size);
    report.rows.reserve(outcomes.size());
    for (auto& out : outcomes) {
        if (!out.row.ok()) report.complete = false;
        if (out.result) {
            report.angles.push_back(std::move(out.angles));
            if (options.keep_results) report.results.push_back(std::move(*out.result));
        }
        report.rows.push_back(std::move(out.row));
    }
    return report;
}

}  // namespace

SweepReport run_sweep(const Scenario& scenario, const SweepSpec& spec,
                      const ConditionedVelocityField& inner, const SweepOptions& options) {
    spec.validate();
    std::vector<Cell> cells;
    for (std::size_t sample = 0; sample < scenario.source_samples.size(); ++sample) {
        const Seed noise_seed = derive_seed(scenario.seed, "noise", sample);
        for (EditVariant variant : spec.variants) {
            for (double s : spec.strengths) {
                Cell cell;
                cell.sample = static_cast<int>(sample);
                cell.variant_label = to_string(variant);
                cell.axis_value = s;
                cell.config = spec.base;
                cell.config.variant = variant;
                cell.config.strength = s;
                cell.config.seed = noise_seed;
                cells.push_back(std::move(cell));
            }
        }
    }
    // Cells are ordered sample -> variant -> strength, so each (sample, variant)
    // block is contiguous with spec.strengths.size() entries.
    auto outcomes = run_cells(scenario, cells, inner, options);
    return assemble(scenario, cells, std::move(outcomes), spec.strengths.size(), options);
}

SweepReport run_knob_sweep(const Scenario& scenario, const SweepSpec& spec, KnobKind kind,
                           const ConditionedVelocityField& inner, const SweepOptions& options) {
    spec.validate();
    const bool cfg_kind = kind == KnobKind::cfg_omega_tar;
    const std::string label = cfg_kind ? "cfg_sweep" : "nmax_sweep";
    std::vector<double> axis;
    if (cfg_kind) {
        axis = spec.omega_tar_sweep;
    } else {
        for (int n : spec.n_max_sweep) axis.push_back(static_cast<double>(n));
    }
    if (axis.empty()) throw Error(errkind::invalid_argument, "knob sweep: empty knob list");
    if (!std::is_sorted(axis.begin(), axis.end())) {
        throw Error(errkind::invalid_argument, "knob sweep: knob values must ascend");
    }

    std::vector<Cell> cells;
    for (std::size_t sample = 0; sample < scenario.source_samples.size(); ++sample) {
        const Seed noise_seed = derive_seed(scenario.seed, "noise", sample);
        for (double knob : axis) {
            Cell cell;
            cell.sample = static_cast<int>(sample);
            cell.variant_label = label;
            cell.axis_value = knob;
            cell.config = spec.base;
            cell.config.variant = EditVariant::flowedit;
            cell.config.strength = 1.0;
            cell.config.seed = noise_seed;
            if (cfg_kind) {
                cell.config.omega_tar = knob;
            } else {
                cell.config.edit_start_index = static_cast<int>(knob);
            }
            cells.push_back(std::move(cell));
        }
    }
    auto outcomes = run_cells(scenario, cells, inner, options);
    return assemble(scenario, cells, std::move(outcomes), axis.size(), options);
}

AngleReport angle_report_from_series(const std::vector<AngleSeries>& series, std::size_t bins) {
    if (bins == 0) throw Error(errkind::invalid_argument, "angle report: needs at least one bin");
    AngleReport report;
    report.bin_width = 180.0 / static_cast<double>(bins);
    report.histogram.assign(bins, 0);

    std::map<int, std::vector<double>> by_step;
    for (const auto& s : series) {
        for (const auto& entry : s.entries) {
            by_step[entry.step].push_back(entry.theta_deg);
            const auto bin = std::min(
                bins - 1, static_cast<std::size_t>(entry.theta_deg / report.bin_width));
            ++report.histogram[bin];
            ++report.total;
        }
    }
    for (const auto& [step, values] : by_step) {
        AngleStats stats;
        stats.step = step;
        stats.count = values.size();
        double sum = 0.0;
        stats.min = values.front();
        stats.max = values.front();
        for (double v : values) {
            sum += v;
            stats.min = std::min(stats.min, v);
            stats.max = std::max(stats.max, v);
        }
        stats.mean = sum / static_cast<double>(values.size());
        double ss = 0.0;
        for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
        stats.sd = std::sqrt(ss / static_cast<double>(values.size()));
        report.per_step.push_back(stats);
    }
    return report;
}

AngleReport angle_report(const std::vector<EditResult>& results, std::size_t bins) {
    std::vector<AngleSeries> series;
    series.reserve(results.size());
    for (const auto& r : results) series.push_back(angle_series(r));
    return angle_report_from_series(series, bins);
}

ReverseStudy reverse_study(const Scenario& scenario, const std::vector<double>& strengths,
                           const EditConfig& base, const ConditionedVelocityField& inner,
                           const SweepOptions& options) {
    if (std::find(strengths.begin(), strengths.end(), 0.0) == strengths.end()) {
        throw Error(errkind::invalid_argument, "reverse study: strengths must include 0");
    }
    ReverseStudy study;
    const Vec axis = sub(scenario.gm_tar.mixture_mean(), scenario.gm_src.mixture_mean());
    const double axis_norm = norm(axis);
    if (axis_norm < 1e-12) {
        throw Error(errkind::undefined_axis, "reverse study: mixture means coincide");
    }
    study.axis_unit = scaled(axis, 1.0 / axis_norm);

    const std::size_t samples = scenario.source_samples.size();
    std::vector<Vec> edited(samples * strengths.size());
    parallel_for(samples * strengths.size(), options.workers, [&](std::size_t i) {
        const std::size_t sample = i / strengths.size();
        const std::size_t si = i % strengths.size();
        EditConfig config = base;
        config.variant = EditVariant::flowslider;
        config.strength = strengths[si];
        config.seed = derive_seed(scenario.seed, "noise", sample);
        edited[i] = run_edit(inner, scenario.source_samples[sample], source_condition(),
                             target_condition(), config)
                        .x_edit;
    });

    const std::size_t zero_index = static_cast<std::size_t>(
        std::find(strengths.begin(), strengths.end(), 0.0) - strengths.begin());
    for (std::size_t si = 0; si < strengths.size(); ++si) {
        for (std::size_t sample = 0; sample < samples; ++sample) {
            const Vec& at_s = edited[sample * strengths.size() + si];
            const Vec& at_zero = edited[sample * strengths.size() + zero_index];
            study.rows.push_back({strengths[si], static_cast<int>(sample),
                                  dot(sub(at_s, at_zero), study.axis_unit)});
        }
    }
    return study;
}

std::vector<AggregateRow> rollup_aggregates(const std::vector<MetricRow>& rows,
                                            const std::vector<AggregateRow>& per_scenario,
                                            const std::vector<Scenario>& scenarios) {
    std::map<std::string, std::string> category_of;
    for (const auto& s : scenarios) category_of[s.name] = s.category;

    // Group scenario aggregates into (category, variant) and ("all", variant).
    struct Bucket {
        std::vector<double> monos, smooths;
    };
    std::map<std::pair<std::string, std::string>, Bucket> buckets;
    for (const auto& agg : per_scenario) {
        const auto cat = category_of.count(agg.scenario) ? category_of[agg.scenario] : "unknown";
        for (const std::string& scope : {std::string("category:") + cat, std::string("all")}) {
            auto& b = buckets[{scope, agg.variant}];
            if (agg.mono) b.monos.push_back(*agg.mono);
            if (agg.smooth) b.smooths.push_back(*agg.smooth);
        }
    }
    struct MeanBucket {
        std::vector<double> effect, euclid, cosfeat, mahal, gap;
    };
    std::map<std::pair<std::string, std::string>, MeanBucket> means;
    for (const auto& row : rows) {
        if (!row.ok() || !row.edit_effect) continue;
        for (const std::string& scope : {std::string("category:") + row.category, std::string("all")}) {
            auto& b = means[{scope, row.variant}];
            b.effect.push_back(*row.edit_effect);
            if (row.dist_euclid) b.euclid.push_back(*row.dist_euclid);
            if (row.dist_cosfeat) b.cosfeat.push_back(*row.dist_cosfeat);
            if (row.dist_mahal) b.mahal.push_back(*row.dist_mahal);
            if (row.logdens_gap) b.gap.push_back(*row.logdens_gap);
        }
    }
    std::vector<AggregateRow> out;
    for (auto& [key, bucket] : buckets) {
        AggregateRow agg;
        agg.scenario = key.first;
        agg.variant = key.second;
        agg.mono = mean_of(bucket.monos);
        agg.smooth = mean_of(bucket.smooths);
        const auto it = means.find(key);
        if (it != means.end()) {
            agg.mean_edit_effect = mean_of(it->second.effect);
            agg.mean_dist_euclid = mean_of(it->second.euclid);
            agg.mean_dist_cosfeat = mean_of(it->second.cosfeat);
            agg.mean_dist_mahal = mean_of(it->second.mahal);
            agg.mean_logdens_gap = mean_of(it->second.gap);
        }
        out.push_back(std::move(agg));
    }
    return out;
}

}  // namespace flowlab
