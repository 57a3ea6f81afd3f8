// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "flowlab/mc_oracle.hpp"

#include <cmath>
#include <string>

#include "flowlab/error.hpp"

namespace flowlab {

McVelocityEstimate mc_velocity_oracle(const GaussianMixtureModel& gm, const Vec& z, double t,
                                      std::size_t n, Seed seed, double bandwidth_fraction) {
    if (!(t > 0.0 && t < 1.0)) {
        throw Error(errkind::invalid_argument, "mc oracle: t must lie strictly inside (0, 1)");
    }
    if (!(bandwidth_fraction > 0.0)) {
        throw Error(errkind::invalid_argument, "mc oracle: bandwidth must be positive");
    }
    if (n == 0) throw Error(errkind::invalid_argument, "mc oracle: n must be positive");
    const std::size_t d = gm.dim();
    if (z.size() != d) throw Error(errkind::invalid_argument, "mc oracle: dimension mismatch");

    // Per-coordinate marginal variance of z_t under the mixture.
    const auto params = marginal_params(gm, t);
    Vec mean_bar(d, 0.0);
    Vec second(d, 0.0);
    for (std::size_t k = 0; k < params.size(); ++k) {
        const double w = gm.components()[k].weight;
        const Eigen::MatrixXd cov = params[k].cov.dense();
        for (std::size_t i = 0; i < d; ++i) {
            mean_bar[i] += w * params[k].mean[i];
            second[i] += w * (cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) +
                              params[k].mean[i] * params[k].mean[i]);
        }
    }
    Vec inv_h(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double var = second[i] - mean_bar[i] * mean_bar[i];
        inv_h[i] = 1.0 / (bandwidth_fraction * std::sqrt(std::max(var, t * t)));
    }

    // Streaming moments; weights u lie in (0, 1] so no rescaling is needed.
    CounterRng rng(seed);
    std::vector<double> comp_weights(gm.component_count());
    for (std::size_t k = 0; k < gm.component_count(); ++k) comp_weights[k] = gm.components()[k].weight;

    double sum_u = 0.0;
    double sum_u2 = 0.0;
    Vec sum_ug(d, 0.0);
    Vec sum_u2g(d, 0.0);
    Vec sum_u2g2(d, 0.0);
    Vec g(d);
    for (std::size_t it = 0; it < n; ++it) {
        const std::size_t k = rng.pick_weighted(comp_weights);
        const auto& comp = gm.components()[k];
        const Vec data_pt = add(comp.mean, comp.cov.unit_transform(rng.gaussian_vector(d)));
        const Vec noise_pt = rng.gaussian_vector(d);
        double q = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double zt = (1.0 - t) * data_pt[i] + t * noise_pt[i];
            const double r = (zt - z[i]) * inv_h[i];
            q += r * r;
            g[i] = noise_pt[i] - data_pt[i];
        }
        const double u = std::exp(-0.5 * q);
        if (u == 0.0) continue;
        sum_u += u;
        sum_u2 += u * u;
        for (std::size_t i = 0; i < d; ++i) {
            sum_ug[i] += u * g[i];
            sum_u2g[i] += u * u * g[i];
            sum_u2g2[i] += u * u * g[i] * g[i];
        }
    }

    const double ess = sum_u2 > 0.0 ? sum_u * sum_u / sum_u2 : 0.0;
    if (ess < 50.0) {
        throw Error(errkind::insufficient_samples,
                    "mc oracle: effective sample size " + std::to_string(ess) +
                        " < 50; widen the bandwidth or raise n");
    }

    McVelocityEstimate out;
    out.effective_sample_size = ess;
    out.value.resize(d);
    out.standard_error.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double est = sum_ug[i] / sum_u;
        // Linearized variance of the ratio estimator: sum_i W_i^2 (g_i - est)^2
        // with W_i = u_i / sum_u.
        const double var = (sum_u2g2[i] - 2.0 * est * sum_u2g[i] + est * est * sum_u2) / (sum_u * sum_u);
        out.value[i] = est;
        out.standard_error[i] = std::sqrt(std::max(var, 0.0));
    }
    return out;
}

}  // namespace flowlab
