// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "flowlab/field.hpp"
#include "flowlab/gmm.hpp"
#include "flowlab/rng.hpp"
#include "flowlab/vec.hpp"

namespace flowlab {

// Deterministic stand-in for learned encoders: maps states and conditions to
// unit-norm feature vectors. Zero inputs raise Error(invalid-argument).
class FeatureMap {
public:
    virtual ~FeatureMap() = default;
    virtual Vec state_feature(const Vec& z) const = 0;
    virtual Vec condition_feature(const Condition& c) const = 0;
    virtual std::size_t feature_dim() const = 0;
};

// feature(z) = z / ||z||; condition feature is the normalized mixture mean.
class NormalizedIdentityFeatures final : public FeatureMap {
public:
    explicit NormalizedIdentityFeatures(std::map<std::string, Vec> condition_loci);

    Vec state_feature(const Vec& z) const override;
    Vec condition_feature(const Condition& c) const override;
    std::size_t feature_dim() const override { return dim_; }

private:
    std::map<std::string, Vec> loci_;
    std::size_t dim_;
};

// feature(z) = normalize(R z) with a fixed seeded Gaussian projection
// R in R^{out_dim x in_dim}; condition loci go through the same projection.
class SeededProjectionFeatures final : public FeatureMap {
public:
    SeededProjectionFeatures(std::size_t in_dim, std::size_t out_dim, Seed seed,
                             std::map<std::string, Vec> condition_loci);

    Vec state_feature(const Vec& z) const override;
    Vec condition_feature(const Condition& c) const override;
    std::size_t feature_dim() const override { return out_dim_; }

private:
    Vec project(const Vec& z) const;

    std::size_t in_dim_;
    std::size_t out_dim_;
    std::vector<Vec> rows_;
    std::map<std::string, Vec> loci_;
};

// Condition loci (mixture means) of every condition of an analytic field,
// including reserved ids "src"/"tar" style registries.
std::map<std::string, Vec> condition_loci(const std::map<std::string, GaussianMixtureModel>& models);

// Cosine between the image-side change and the condition-side change.
// Throws Error(undefined-direction) when either difference norm < 1e-12.
double directional_similarity(const Vec& f_src, const Vec& f_edit, const Vec& g_src,
                              const Vec& g_tar);

// 1 - cos(a, b) for unit vectors; range [0, 2].
double feature_distance(const Vec& f_a, const Vec& f_b);

// Inner product of unit vectors; the per-strength edit-effect score.
double edit_effect(const Vec& f_edit, const Vec& g_tar);

// Fraction of consecutive strength pairs where both the effect score and the
// preservation distance are non-decreasing (ties count).
double monotonicity(const std::vector<double>& effect, const std::vector<double>& distance);

// Normalized triangle deficits over consecutive triplets; one value per
// triplet k: (d(k,k+1) + d(k+1,k+2) - d(k,k+2)) / d(k,k+2).
// Throws Error(degenerate-triplet) when an endpoint distance is <= 1e-12.
std::vector<double> triangle_deficits(
    const std::vector<Vec>& points, const std::function<double(const Vec&, const Vec&)>& dist);

// Worst-case (maximum) normalized deficit; 0 for a metrically geodesic series.
double smoothness(const std::vector<Vec>& points,
                  const std::function<double(const Vec&, const Vec&)>& dist);

struct PreservationDistances {
    double euclid = 0.0;
    double cosine_feature = 0.0;
    double mahalanobis = 0.0;
    double log_density_gap = 0.0;  // signed: log p(x_src) - log p(x_edit)
};

// Desk-scale preservation metrics between the source and an edited state.
// Mahalanobis uses the source's most responsible component of `ref`.
PreservationDistances preservation_distances(const Vec& x_src, const Vec& x_edit,
                                             const GaussianMixtureModel& ref,
                                             const FeatureMap& features);

struct StrengthPoint {
    double s = 0.0;
    Vec x_edit;
    double effect = 0.0;
    double preservation = 0.0;
    Vec feature;
};

struct StrengthSeries {
    std::vector<StrengthPoint> points;  // strengths strictly increasing
    void validate() const;
};

struct TradeoffTable {
    std::vector<std::string> columns;  // "s", "edit_effect", then one per distance
    std::vector<std::vector<double>> rows;
};

using NamedDistance = std::pair<std::string, std::function<double(const Vec&)>>;

// One row per strength: s, effect score, then each named preservation value.
TradeoffTable tradeoff_table(const StrengthSeries& series,
                             const std::vector<NamedDistance>& distances);

}  // namespace flowlab
