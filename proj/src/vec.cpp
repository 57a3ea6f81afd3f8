// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "flowlab/vec.hpp"

#include <cmath>
#include <cstdlib>

#include "flowlab/error.hpp"

namespace flowlab {

Vec add(const Vec& a, const Vec& b) {
    require_same_dim(a, b, "add");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Vec sub(const Vec& a, const Vec& b) {
    require_same_dim(a, b, "sub");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Vec scaled(const Vec& a, double factor) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = factor * a[i];
    return out;
}

Vec axpy(const Vec& a, double factor, const Vec& b) {
    require_same_dim(a, b, "axpy");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + factor * b[i];
    return out;
}

double dot(const Vec& a, const Vec& b) {
    require_same_dim(a, b, "dot");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

double squared_norm(const Vec& a) {
    double sum = 0.0;
    for (double x : a) sum += x * x;
    return sum;
}

double norm(const Vec& a) { return std::sqrt(squared_norm(a)); }

double max_abs(const Vec& a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

double max_abs_diff(const Vec& a, const Vec& b) {
    require_same_dim(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

bool all_finite(const Vec& a) {
    for (double x : a) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

void require_finite(const Vec& a, const std::string& what) {
    if (!all_finite(a)) throw Error(errkind::numeric, what + ": non-finite entry");
}

void require_same_dim(const Vec& a, const Vec& b, const std::string& what) {
    if (a.size() != b.size()) {
        throw Error(errkind::invalid_argument,
                    what + ": dimension mismatch (" + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()) + ")");
    }
}

}  // namespace flowlab
