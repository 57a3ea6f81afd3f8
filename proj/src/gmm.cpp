// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "flowlab/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "flowlab/error.hpp"

namespace flowlab {

namespace {

Eigen::Map<const Eigen::VectorXd> as_eigen(const Vec& v) {
    return {v.data(), static_cast<Eigen::Index>(v.size())};
}

Vec from_eigen(const Eigen::VectorXd& v) {
    return {v.data(), v.data() + v.size()};
}

void require_time_in_unit(double t, const char* what) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw Error(errkind::invalid_argument, std::string(what) + ": t must lie in [0, 1]");
    }
}

}  // namespace

Covariance Covariance::diagonal(Vec variances) {
    if (variances.empty()) throw Error(errkind::invalid_argument, "covariance: empty diagonal");
    double log_det = 0.0;
    for (double v : variances) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw Error(errkind::invalid_argument, "covariance: diagonal entries must be positive");
        }
        log_det += std::log(v);
    }
    Covariance c;
    c.diag_ = true;
    c.dim_ = variances.size();
    c.var_ = std::move(variances);
    c.log_det_ = log_det;
    return c;
}

Covariance Covariance::full(const Eigen::MatrixXd& sigma) {
    if (sigma.rows() == 0 || sigma.rows() != sigma.cols()) {
        throw Error(errkind::invalid_argument, "covariance: matrix must be square and non-empty");
    }
    const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
    if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw Error(errkind::invalid_argument, "covariance: matrix not symmetric");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success) {
        throw Error(errkind::invalid_argument, "covariance: matrix not positive-definite");
    }
    Covariance c;
    c.diag_ = false;
    c.dim_ = static_cast<std::size_t>(sigma.rows());
    c.mat_ = sigma;
    c.chol_lower_ = llt.matrixL();
    c.log_det_ = 2.0 * c.chol_lower_.diagonal().array().log().sum();
    return c;
}

const Vec& Covariance::diagonal_values() const {
    if (!diag_) throw Error(errkind::internal, "covariance: diagonal_values on full matrix");
    return var_;
}

Eigen::MatrixXd Covariance::dense() const {
    if (!diag_) return mat_;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim_),
                                              static_cast<Eigen::Index>(dim_));
    for (std::size_t i = 0; i < dim_; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = var_[i];
    return m;
}

Vec Covariance::apply(const Vec& x) const {
    if (x.size() != dim_) throw Error(errkind::invalid_argument, "covariance apply: dimension mismatch");
    if (diag_) {
        Vec out(dim_);
        for (std::size_t i = 0; i < dim_; ++i) out[i] = var_[i] * x[i];
        return out;
    }
    return from_eigen(mat_ * as_eigen(x));
}

Vec Covariance::solve(const Vec& b) const {
    if (b.size() != dim_) throw Error(errkind::invalid_argument, "covariance solve: dimension mismatch");
    if (diag_) {
        Vec out(dim_);
        for (std::size_t i = 0; i < dim_; ++i) out[i] = b[i] / var_[i];
        return out;
    }
    Eigen::VectorXd rhs = as_eigen(b);
    Eigen::VectorXd y = chol_lower_.triangularView<Eigen::Lower>().solve(rhs);
    Eigen::VectorXd x = chol_lower_.transpose().triangularView<Eigen::Upper>().solve(y);
    return from_eigen(x);
}

double Covariance::quad_inv(const Vec& r) const {
    if (r.size() != dim_) throw Error(errkind::invalid_argument, "covariance quad: dimension mismatch");
    if (diag_) {
        double q = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) q += r[i] * r[i] / var_[i];
        return q;
    }
    Eigen::VectorXd y = chol_lower_.triangularView<Eigen::Lower>().solve(as_eigen(r).eval());
    return y.squaredNorm();
}

Vec Covariance::unit_transform(const Vec& g) const {
    if (g.size() != dim_) throw Error(errkind::invalid_argument, "covariance transform: dimension mismatch");
    if (diag_) {
        Vec out(dim_);
        for (std::size_t i = 0; i < dim_; ++i) out[i] = std::sqrt(var_[i]) * g[i];
        return out;
    }
    return from_eigen(chol_lower_ * as_eigen(g));
}

Covariance Covariance::path_blend(double t) const {
    const double a = (1.0 - t) * (1.0 - t);
    const double b = t * t;
    if (diag_) {
        Vec v(dim_);
        for (std::size_t i = 0; i < dim_; ++i) v[i] = a * var_[i] + b;
        return Covariance::diagonal(std::move(v));
    }
    Eigen::MatrixXd m = a * mat_;
    m.diagonal().array() += b;
    return Covariance::full(m);
}

Covariance Covariance::scaled(double factor) const {
    if (!(factor > 0.0)) {
        throw Error(errkind::invalid_argument, "covariance scale factor must be positive");
    }
    if (diag_) {
        Vec v(dim_);
        for (std::size_t i = 0; i < dim_; ++i) v[i] = factor * var_[i];
        return Covariance::diagonal(std::move(v));
    }
    return Covariance::full(factor * mat_);
}

GaussianMixtureModel::GaussianMixtureModel(std::vector<GmComponent> components)
    : components_(std::move(components)) {
    if (components_.empty()) {
        throw Error(errkind::invalid_argument, "mixture: needs at least one component");
    }
    dim_ = components_.front().mean.size();
    double weight_sum = 0.0;
    for (const auto& c : components_) {
        if (!(c.weight > 0.0) || !std::isfinite(c.weight)) {
            throw Error(errkind::invalid_argument, "mixture: weights must be positive");
        }
        if (c.mean.size() != dim_ || c.cov.dim() != dim_) {
            throw Error(errkind::invalid_argument, "mixture: components must share one dimension");
        }
        require_finite(c.mean, "mixture mean");
        weight_sum += c.weight;
    }
    if (std::abs(weight_sum - 1.0) > 1e-12) {
        throw Error(errkind::invalid_argument, "mixture: weights must sum to 1");
    }
}

GaussianMixtureModel GaussianMixtureModel::single(Vec mean, Vec diagonal_variances) {
    std::vector<GmComponent> comps;
    comps.push_back({1.0, std::move(mean), Covariance::diagonal(std::move(diagonal_variances))});
    return GaussianMixtureModel(std::move(comps));
}

GaussianMixtureModel GaussianMixtureModel::standard_normal(std::size_t d) {
    return single(Vec(d, 0.0), Vec(d, 1.0));
}

GaussianMixtureModel GaussianMixtureModel::union_mixture(
    const std::vector<const GaussianMixtureModel*>& models) {
    if (models.empty()) throw Error(errkind::invalid_argument, "union mixture: no models");
    std::vector<GmComponent> comps;
    const double share = 1.0 / static_cast<double>(models.size());
    for (const auto* m : models) {
        for (const auto& c : m->components()) {
            comps.push_back({share * c.weight, c.mean, c.cov});
        }
    }
    // Renormalize so the sum-to-1 invariant holds exactly in double precision.
    double sum = 0.0;
    for (const auto& c : comps) sum += c.weight;
    for (auto& c : comps) c.weight /= sum;
    return GaussianMixtureModel(std::move(comps));
}

Vec GaussianMixtureModel::mixture_mean() const {
    Vec mean(dim_, 0.0);
    for (const auto& c : components_) {
        for (std::size_t i = 0; i < dim_; ++i) mean[i] += c.weight * c.mean[i];
    }
    return mean;
}

double GaussianMixtureModel::log_density(const Vec& z) const {
    if (z.size() != dim_) throw Error(errkind::invalid_argument, "log_density: dimension mismatch");
    double max_lw = -std::numeric_limits<double>::infinity();
    std::vector<double> lw(components_.size());
    for (std::size_t k = 0; k < components_.size(); ++k) {
        lw[k] = std::log(components_[k].weight) + gaussian_log_density(z, components_[k].mean, components_[k].cov);
        max_lw = std::max(max_lw, lw[k]);
    }
    double sum = 0.0;
    for (double v : lw) sum += std::exp(v - max_lw);
    return max_lw + std::log(sum);
}

Vec GaussianMixtureModel::sample(CounterRng& rng) const {
    std::vector<double> weights(components_.size());
    for (std::size_t k = 0; k < components_.size(); ++k) weights[k] = components_[k].weight;
    const std::size_t k = rng.pick_weighted(weights);
    const auto& comp = components_[k];
    return add(comp.mean, comp.cov.unit_transform(rng.gaussian_vector(dim_)));
}

double gaussian_log_density(const Vec& z, const Vec& mean, const Covariance& cov) {
    require_same_dim(z, mean, "gaussian_log_density");
    const Vec r = sub(z, mean);
    constexpr double log_two_pi = 1.8378770664093454836;  // log(2*pi)
    return -0.5 * (static_cast<double>(z.size()) * log_two_pi + cov.log_det() + cov.quad_inv(r));
}

std::vector<MarginalParams> marginal_params(const GaussianMixtureModel& gm, double t) {
    require_time_in_unit(t, "marginal_params");
    std::vector<MarginalParams> out;
    out.reserve(gm.component_count());
    for (const auto& c : gm.components()) {
        out.push_back({scaled(c.mean, 1.0 - t), c.cov.path_blend(t)});
    }
    return out;
}

namespace {

// Log-responsibilities share work between the posterior and the velocity.
std::vector<double> posterior_weights(const GaussianMixtureModel& gm,
                                      const std::vector<MarginalParams>& params, const Vec& z) {
    const std::size_t n = params.size();
    std::vector<double> lw(n);
    double max_lw = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        lw[k] = std::log(gm.components()[k].weight) +
                gaussian_log_density(z, params[k].mean, params[k].cov);
        max_lw = std::max(max_lw, lw[k]);
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        lw[k] = std::exp(lw[k] - max_lw);
        sum += lw[k];
    }
    if (!(sum > 0.0) || !std::isfinite(sum)) {
        throw Error(errkind::internal, "component_posterior: degenerate marginal weights");
    }
    for (double& w : lw) w /= sum;
    return lw;
}

}  // namespace

Vec component_posterior(const GaussianMixtureModel& gm, const Vec& z, double t) {
    require_time_in_unit(t, "component_posterior");
    if (z.size() != gm.dim()) {
        throw Error(errkind::invalid_argument, "component_posterior: dimension mismatch");
    }
    return posterior_weights(gm, marginal_params(gm, t), z);
}

Vec gm_velocity(const GaussianMixtureModel& gm, const Vec& z, double t) {
    require_time_in_unit(t, "gm_velocity");
    if (z.size() != gm.dim()) {
        throw Error(errkind::invalid_argument, "gm_velocity: dimension mismatch");
    }
    const auto params = marginal_params(gm, t);
    const auto resp = posterior_weights(gm, params, z);

    // Per component k with A_k = (1-t)^2 sigma_k + t^2 I and r = z - (1-t) mu_k:
    //   E[z0 | z, k] = t A_k^{-1} r
    //   E[z1 | z, k] = mu_k + (1-t) sigma_k A_k^{-1} r
    Vec v(gm.dim(), 0.0);
    for (std::size_t k = 0; k < gm.component_count(); ++k) {
        const auto& comp = gm.components()[k];
        const Vec r = sub(z, params[k].mean);
        const Vec w = params[k].cov.solve(r);
        const Vec e0 = scaled(w, t);
        const Vec e1 = axpy(comp.mean, 1.0 - t, comp.cov.apply(w));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += resp[k] * (e0[i] - e1[i]);
    }
    require_finite(v, "gm_velocity");
    return v;
}

}  // namespace flowlab
