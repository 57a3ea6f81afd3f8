// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "flowlab/time_grid.hpp"

#include <cmath>
#include <string>

#include "flowlab/error.hpp"

namespace flowlab {

TimeGrid TimeGrid::uniform(int steps) {
    if (steps < 1) throw Error(errkind::invalid_argument, "time grid needs at least 1 step");
    std::vector<double> times(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) {
        times[static_cast<std::size_t>(i)] = static_cast<double>(i) / static_cast<double>(steps);
    }
    return TimeGrid(std::move(times));
}

TimeGrid TimeGrid::from_times(std::vector<double> times) {
    if (times.size() < 2) throw Error(errkind::invalid_argument, "time grid needs at least 2 nodes");
    if (times.front() != 0.0) throw Error(errkind::invalid_argument, "time grid must start at 0");
    if (times.back() != 1.0) throw Error(errkind::invalid_argument, "time grid must end at 1");
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        if (!std::isfinite(times[i + 1]) || !(times[i] < times[i + 1])) {
            throw Error(errkind::invalid_argument,
                        "time grid must be strictly increasing (node " + std::to_string(i + 1) + ")");
        }
    }
    return TimeGrid(std::move(times));
}

}  // namespace flowlab
