// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "flowlab/metrics.hpp"

#include <cmath>
#include <limits>

#include "flowlab/error.hpp"

namespace flowlab {

namespace {

constexpr double kNormFloor = 1e-12;
constexpr double kUnitTol = 1e-9;

Vec normalized_or_throw(const Vec& v, const char* what) {
    const double n = norm(v);
    if (n < kNormFloor) {
        throw Error(errkind::invalid_argument, std::string(what) + ": zero input has no feature");
    }
    return scaled(v, 1.0 / n);
}

void require_unit(const Vec& v, const char* what) {
    if (std::abs(norm(v) - 1.0) > kUnitTol) {
        throw Error(errkind::invalid_argument, std::string(what) + ": input must be unit-norm");
    }
}

}  // namespace

NormalizedIdentityFeatures::NormalizedIdentityFeatures(std::map<std::string, Vec> condition_loci)
    : loci_(std::move(condition_loci)) {
    if (loci_.empty()) {
        throw Error(errkind::invalid_argument, "feature map: needs at least one condition locus");
    }
    dim_ = loci_.begin()->second.size();
}

Vec NormalizedIdentityFeatures::state_feature(const Vec& z) const {
    return normalized_or_throw(z, "state_feature");
}

Vec NormalizedIdentityFeatures::condition_feature(const Condition& c) const {
    auto it = loci_.find(c.id());
    if (c.is_null() || it == loci_.end()) {
        throw Error(errkind::unknown_condition, "feature map: no locus for " + c.display());
    }
    return normalized_or_throw(it->second, "condition_feature");
}

SeededProjectionFeatures::SeededProjectionFeatures(std::size_t in_dim, std::size_t out_dim,
                                                   Seed seed,
                                                   std::map<std::string, Vec> condition_loci)
    : in_dim_(in_dim), out_dim_(out_dim), loci_(std::move(condition_loci)) {
    if (in_dim == 0 || out_dim == 0) {
        throw Error(errkind::invalid_argument, "feature projection: dimensions must be positive");
    }
    CounterRng rng(derive_seed(seed, "feature-projection"));
    const double scale = 1.0 / std::sqrt(static_cast<double>(out_dim));
    rows_.resize(out_dim);
    for (auto& row : rows_) row = scaled(rng.gaussian_vector(in_dim), scale);
}

Vec SeededProjectionFeatures::project(const Vec& z) const {
    if (z.size() != in_dim_) {
        throw Error(errkind::invalid_argument, "feature projection: dimension mismatch");
    }
    Vec out(out_dim_);
    for (std::size_t r = 0; r < out_dim_; ++r) out[r] = dot(rows_[r], z);
    return out;
}

Vec SeededProjectionFeatures::state_feature(const Vec& z) const {
    return normalized_or_throw(project(z), "state_feature");
}

Vec SeededProjectionFeatures::condition_feature(const Condition& c) const {
    auto it = loci_.find(c.id());
    if (c.is_null() || it == loci_.end()) {
        throw Error(errkind::unknown_condition, "feature map: no locus for " + c.display());
    }
    return normalized_or_throw(project(it->second), "condition_feature");
}

std::map<std::string, Vec> condition_loci(
    const std::map<std::string, GaussianMixtureModel>& models) {
    std::map<std::string, Vec> loci;
    for (const auto& [id, gm] : models) loci.emplace(id, gm.mixture_mean());
    return loci;
}

double directional_similarity(const Vec& f_src, const Vec& f_edit, const Vec& g_src,
                              const Vec& g_tar) {
    const Vec d_img = sub(f_edit, f_src);
    const Vec d_txt = sub(g_tar, g_src);
    const double ni = norm(d_img);
    const double nt = norm(d_txt);
    if (ni < kNormFloor || nt < kNormFloor) {
        throw Error(errkind::undefined_direction,
                    "directional_similarity: a difference vector is numerically zero");
    }
    return dot(d_img, d_txt) / (ni * nt);
}

double feature_distance(const Vec& f_a, const Vec& f_b) {
    require_same_dim(f_a, f_b, "feature_distance");
    require_unit(f_a, "feature_distance");
    require_unit(f_b, "feature_distance");
    return 1.0 - dot(f_a, f_b);
}

double edit_effect(const Vec& f_edit, const Vec& g_tar) {
    require_same_dim(f_edit, g_tar, "edit_effect");
    require_unit(f_edit, "edit_effect");
    require_unit(g_tar, "edit_effect");
    return dot(f_edit, g_tar);
}

double monotonicity(const std::vector<double>& effect, const std::vector<double>& distance) {
    if (effect.size() != distance.size()) {
        throw Error(errkind::invalid_argument, "monotonicity: series lengths differ");
    }
    if (effect.size() < 2) {
        throw Error(errkind::invalid_argument, "monotonicity: needs at least two strengths");
    }
    std::size_t good = 0;
    for (std::size_t k = 0; k + 1 < effect.size(); ++k) {
        if (effect[k + 1] >= effect[k] && distance[k + 1] >= distance[k]) ++good;
    }
    return static_cast<double>(good) / static_cast<double>(effect.size() - 1);
}

std::vector<double> triangle_deficits(
    const std::vector<Vec>& points, const std::function<double(const Vec&, const Vec&)>& dist) {
    if (points.size() < 3) {
        throw Error(errkind::invalid_argument, "smoothness: needs at least three points");
    }
    std::vector<double> deficits;
    deficits.reserve(points.size() - 2);
    for (std::size_t k = 0; k + 2 < points.size(); ++k) {
        const double ab = dist(points[k], points[k + 1]);
        const double bc = dist(points[k + 1], points[k + 2]);
        const double ac = dist(points[k], points[k + 2]);
        if (ab < 0.0 || bc < 0.0 || ac < 0.0) {
            throw Error(errkind::invalid_argument, "smoothness: negative distance");
        }
        if (ac <= kNormFloor) {
            throw Error(errkind::degenerate_triplet,
                        "smoothness: endpoint distance is zero for triplet " + std::to_string(k));
        }
        deficits.push_back((ab + bc - ac) / ac);
    }
    return deficits;
}

double smoothness(const std::vector<Vec>& points,
                  const std::function<double(const Vec&, const Vec&)>& dist) {
    const auto deficits = triangle_deficits(points, dist);
    double worst = -std::numeric_limits<double>::infinity();
    for (double d : deficits) worst = std::max(worst, d);
    return worst;
}

PreservationDistances preservation_distances(const Vec& x_src, const Vec& x_edit,
                                             const GaussianMixtureModel& ref,
                                             const FeatureMap& features) {
    require_same_dim(x_src, x_edit, "preservation_distances");
    PreservationDistances out;
    out.euclid = norm(sub(x_edit, x_src));
    out.cosine_feature = 1.0 - dot(features.state_feature(x_src), features.state_feature(x_edit));

    // Most responsible component for the source under the reference model.
    std::size_t best = 0;
    double best_lw = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < ref.component_count(); ++k) {
        const auto& comp = ref.components()[k];
        const double lw = std::log(comp.weight) + gaussian_log_density(x_src, comp.mean, comp.cov);
        if (lw > best_lw) {
            best_lw = lw;
            best = k;
        }
    }
    out.mahalanobis = std::sqrt(ref.components()[best].cov.quad_inv(sub(x_edit, x_src)));
    out.log_density_gap = ref.log_density(x_src) - ref.log_density(x_edit);
    return out;
}

void StrengthSeries::validate() const {
    if (points.size() < 2) {
        throw Error(errkind::invalid_argument, "strength series: needs at least two strengths");
    }
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
        if (!(points[k].s < points[k + 1].s)) {
            throw Error(errkind::invalid_argument, "strength series: strengths must strictly increase");
        }
    }
}

TradeoffTable tradeoff_table(const StrengthSeries& series,
                             const std::vector<NamedDistance>& distances) {
    series.validate();
    TradeoffTable table;
    table.columns.push_back("s");
    table.columns.push_back("edit_effect");
    for (const auto& [name, fn] : distances) table.columns.push_back(name);
    for (const auto& point : series.points) {
        std::vector<double> row{point.s, point.effect};
        for (const auto& [name, fn] : distances) row.push_back(fn(point.x_edit));
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace flowlab
