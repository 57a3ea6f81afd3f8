// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace flowlab {

// Integration grid {t_i}_{i=0..T} over [0, 1]: strictly increasing,
// t_0 = 0 and t_T = 1 exactly.
class TimeGrid {
public:
    // t_i = i / steps.
    static TimeGrid uniform(int steps);
    // Explicit grid values (config hook); validated like uniform grids.
    static TimeGrid from_times(std::vector<double> times);

    int step_count() const { return static_cast<int>(times_.size()) - 1; }
    double at(int i) const { return times_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& times() const { return times_; }

    friend bool operator==(const TimeGrid& a, const TimeGrid& b) { return a.times_ == b.times_; }

private:
    explicit TimeGrid(std::vector<double> times) : times_(std::move(times)) {}
    std::vector<double> times_;
};

inline TimeGrid uniform_time_grid(int steps) { return TimeGrid::uniform(steps); }

}  // namespace flowlab
