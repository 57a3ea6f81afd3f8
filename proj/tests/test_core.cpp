// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "flowlab/error.hpp"
#include "flowlab/rng.hpp"
#include "flowlab/time_grid.hpp"
#include "flowlab/vec.hpp"

using namespace flowlab;

TEST_CASE("uniform time grid values") {
    const TimeGrid grid = uniform_time_grid(28);
    CHECK(grid.step_count() == 28);
    CHECK(grid.at(0) == 0.0);
    CHECK(grid.at(14) == 0.5);
    CHECK(grid.at(28) == 1.0);
    CHECK(grid.at(1) == doctest::Approx(1.0 / 28.0).epsilon(1e-15));

    const TimeGrid tiny = uniform_time_grid(1);
    CHECK(tiny.times() == std::vector<double>{0.0, 1.0});

    const TimeGrid four = uniform_time_grid(4);
    CHECK(four.times() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
}

TEST_CASE("uniform time grid rejects zero steps") {
    CHECK_THROWS_AS(uniform_time_grid(0), Error);
    try {
        uniform_time_grid(0);
    } catch (const Error& e) {
        CHECK(e.kind() == errkind::invalid_argument);
    }
}

TEST_CASE("time grid monotonicity") {
    for (int steps : {1, 2, 7, 28, 100}) {
        const TimeGrid grid = uniform_time_grid(steps);
        for (int i = 0; i < grid.step_count(); ++i) CHECK(grid.at(i) < grid.at(i + 1));
    }
}

TEST_CASE("explicit grid validation") {
    CHECK_NOTHROW(TimeGrid::from_times({0.0, 0.3, 1.0}));
    CHECK_THROWS_AS(TimeGrid::from_times({0.0, 1.0, 0.5}), Error);
    CHECK_THROWS_AS(TimeGrid::from_times({0.1, 0.5, 1.0}), Error);
    CHECK_THROWS_AS(TimeGrid::from_times({0.0, 0.5, 0.9}), Error);
    CHECK_THROWS_AS(TimeGrid::from_times({0.0}), Error);
    CHECK_THROWS_AS(TimeGrid::from_times({0.0, 0.5, 0.5, 1.0}), Error);
}

TEST_CASE("gaussian noise determinism and seed sensitivity") {
    const Vec a = gaussian_noise(7, 2);
    const Vec b = gaussian_noise(7, 2);
    CHECK(a == b);
    const Vec c = gaussian_noise(8, 2);
    CHECK(a != c);
    CHECK_THROWS_AS(gaussian_noise(7, 0), Error);
}

TEST_CASE("gaussian noise moments at 1e5 draws") {
    // Mean within 3 standard errors of 0 and variance within 3 standard errors
    // of 1, per coordinate (and inside the coarser 0.02 envelope).
    constexpr std::size_t n = 100000;
    constexpr std::size_t d = 2;
    CounterRng rng(20260210);
    Vec sum(d, 0.0), sum_sq(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec x = rng.gaussian_vector(d);
        for (std::size_t j = 0; j < d; ++j) {
            sum[j] += x[j];
            sum_sq[j] += x[j] * x[j];
        }
    }
    const double se_mean = 1.0 / std::sqrt(static_cast<double>(n));
    const double se_var = std::sqrt(2.0 / static_cast<double>(n));
    for (std::size_t j = 0; j < d; ++j) {
        const double mean = sum[j] / n;
        const double var = sum_sq[j] / n - mean * mean;
        CHECK(std::abs(mean) < 3.0 * se_mean);
        CHECK(std::abs(var - 1.0) < 3.0 * se_var);
        CHECK(std::abs(mean) < 0.02);
        CHECK(std::abs(var - 1.0) < 0.02);
    }
}

TEST_CASE("counter rng streams are independent per seed derivation") {
    const Seed base = 99;
    CHECK(derive_seed(base, "noise", 0) != derive_seed(base, "noise", 1));
    CHECK(derive_seed(base, "noise", 0) != derive_seed(base, "samples", 0));
    CHECK(derive_seed(base, "noise", 3) == derive_seed(base, "noise", 3));
}

TEST_CASE("vector operations satisfy linearity properties") {
    CounterRng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = 1 + rng.next_u64() % 8;
        const Vec a = rng.gaussian_vector(d);
        const Vec b = rng.gaussian_vector(d);
        const Vec c = rng.gaussian_vector(d);
        const double alpha = 4.0 * rng.next_unit() - 2.0;

        // dot bilinearity: <a + b, c> = <a, c> + <b, c>
        const double lhs = dot(add(a, b), c);
        const double rhs = dot(a, c) + dot(b, c);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));

        // homogeneity: <alpha a, b> = alpha <a, b>
        const double h1 = dot(scaled(a, alpha), b);
        const double h2 = alpha * dot(a, b);
        CHECK(std::abs(h1 - h2) <= 1e-12 * std::max(1.0, std::abs(h1)));

        // norm homogeneity: ||alpha a|| = |alpha| ||a||
        CHECK(norm(scaled(a, alpha)) ==
              doctest::Approx(std::abs(alpha) * norm(a)).epsilon(1e-12));

        // axpy agrees with its expansion
        CHECK(max_abs_diff(axpy(a, alpha, b), add(a, scaled(b, alpha))) == 0.0);
    }
}

TEST_CASE("vector guards") {
    CHECK_THROWS_AS(add({1.0, 2.0}, {1.0}), Error);
    CHECK_THROWS_AS(require_finite({1.0, std::nan("")}, "x"), Error);
    CHECK(all_finite({1.0, -2.0, 0.0}));
    CHECK_FALSE(all_finite({1.0, std::numeric_limits<double>::infinity()}));
}
