// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "flowlab/csv.hpp"

namespace flowlab {

enum class PlotKind { angle_hist, tradeoff, trajectory2d };

std::string to_string(PlotKind kind);
PlotKind plot_kind_from_string(const std::string& name);

struct PlotOptions {
    int width = 800;
    int height = 600;
    std::string title;
    // tradeoff: which distance column supplies the x axis.
    std::string x_column = "dist_euclid";
};

// Affine data-to-pixel mapping used by every renderer; exposed so tests can
// recompute point coordinates exactly.
struct PlotFrame {
    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;  // data ranges
    double left = 70.0, right = 25.0, top = 45.0, bottom = 55.0;
    int width = 800, height = 600;

    double px(double x) const {
        return left + (x - x0) / (x1 - x0) * (static_cast<double>(width) - left - right);
    }
    double py(double y) const {
        return static_cast<double>(height) - bottom -
               (y - y0) / (y1 - y0) * (static_cast<double>(height) - top - bottom);
    }
};

// Expands a raw data range to round tick bounds (1-2-5 ladder).
void nice_axis(double lo, double hi, double& out_lo, double& out_hi, double& out_step);

// Coordinate text as written into SVG attributes.
std::string svg_coord(double value);

// Renders a CSV table to a self-contained deterministic SVG. Schemas:
//   angle_hist:   requires column theta_deg
//   tradeoff:     requires columns series, s, edit_effect, <x_column>
//   trajectory2d: requires columns series, step, z0, z1
// Schema violations raise Error(parse) naming the missing column.
void render_plot(PlotKind kind, const std::filesystem::path& csv_path,
                 const std::filesystem::path& svg_path, const PlotOptions& options = {});

// In-memory variant used by the CLI and tests.
std::string render_plot_text(PlotKind kind, const CsvTable& data, const PlotOptions& options = {});

}  // namespace flowlab
