// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "flowlab/field.hpp"

namespace flowlab {

// Velocity field replayed from a text table. Format:
//   dim=<d> conditions=<comma list>
//   c=<id> t=<float> z=<d floats> v=<d floats>
// '#' starts a comment; records per condition must fill a complete axis-aligned
// lattice over (z_0..z_{d-1}, t). Off-node queries interpolate multilinearly;
// queries outside the lattice hull raise Error(out-of-domain).
class TabulatedField final : public ConditionedVelocityField {
public:
    static TabulatedField load(const std::filesystem::path& path);
    static TabulatedField parse(const std::string& text, const std::string& source_name);

    Vec eval(const Vec& z, double t, const Condition& c) const override;
    std::size_t dim() const override { return dim_; }
    bool has_condition(const Condition& c) const override;

private:
    struct Table {
        std::vector<std::vector<double>> axes;  // d state axes then the time axis
        std::vector<Vec> velocities;            // row-major over axes
    };

    TabulatedField() = default;

    std::size_t dim_ = 0;
    std::map<std::string, Table> tables_;
};

inline TabulatedField load_tabulated_field(const std::filesystem::path& path) {
    return TabulatedField::load(path);
}

}  // namespace flowlab
