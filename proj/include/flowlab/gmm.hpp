// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "flowlab/rng.hpp"
#include "flowlab/vec.hpp"

namespace flowlab {

// Symmetric positive-definite covariance with a diagonal fast path.
// Full matrices are validated and factored once (Cholesky) at construction.
class Covariance {
public:
    // Empty (dimension 0) placeholder; any real use goes through the factories.
    Covariance() = default;

    static Covariance diagonal(Vec variances);
    static Covariance full(const Eigen::MatrixXd& sigma);

    std::size_t dim() const { return dim_; }
    bool is_diagonal() const { return diag_; }
    const Vec& diagonal_values() const;
    Eigen::MatrixXd dense() const;

    Vec apply(const Vec& x) const;    // sigma * x
    Vec solve(const Vec& b) const;    // sigma^{-1} * b
    double quad_inv(const Vec& r) const;  // r^T sigma^{-1} r
    double log_det() const { return log_det_; }
    Vec unit_transform(const Vec& g) const;  // L * g with sigma = L L^T

    // (1-t)^2 * sigma + t^2 * I, the covariance of the linear-path marginal.
    Covariance path_blend(double t) const;
    Covariance scaled(double factor) const;

private:
    bool diag_ = true;
    std::size_t dim_ = 0;
    Vec var_;                      // diagonal variances
    Eigen::MatrixXd mat_;          // full matrix
    Eigen::MatrixXd chol_lower_;   // cached L for the full path
    double log_det_ = 0.0;
};

struct GmComponent {
    double weight;
    Vec mean;
    Covariance cov;
};

// Finite Gaussian mixture; weights positive and summing to 1, all components
// sharing one dimension, every covariance SPD.
class GaussianMixtureModel {
public:
    explicit GaussianMixtureModel(std::vector<GmComponent> components);

    static GaussianMixtureModel single(Vec mean, Vec diagonal_variances);
    static GaussianMixtureModel standard_normal(std::size_t d);
    // Equal-weight union: component k of model m enters with weight w_mk / M.
    static GaussianMixtureModel union_mixture(const std::vector<const GaussianMixtureModel*>& models);

    std::size_t dim() const { return dim_; }
    std::size_t component_count() const { return components_.size(); }
    const std::vector<GmComponent>& components() const { return components_; }

    Vec mixture_mean() const;
    double log_density(const Vec& z) const;
    Vec sample(CounterRng& rng) const;

private:
    std::vector<GmComponent> components_;
    std::size_t dim_;
};

double gaussian_log_density(const Vec& z, const Vec& mean, const Covariance& cov);

struct MarginalParams {
    Vec mean;
    Covariance cov;
};

// Law of z_t = (1-t) z1 + t z0 given component k, with z0 ~ N(0, I):
// mean (1-t) mu_k, covariance (1-t)^2 sigma_k + t^2 I.
std::vector<MarginalParams> marginal_params(const GaussianMixtureModel& gm, double t);

// Posterior component responsibilities at (z, t), log-sum-exp normalized.
Vec component_posterior(const GaussianMixtureModel& gm, const Vec& z, double t);

// Exact conditional expectation E[z0 - z1 | z_t = z] for the mixture.
Vec gm_velocity(const GaussianMixtureModel& gm, const Vec& z, double t);

}  // namespace flowlab
