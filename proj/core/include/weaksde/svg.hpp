#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>

#include "weaksde/path.hpp"

namespace weaksde {

struct ScatterOptions {
    double exit_radius = 0.0;  // draw a circle of this radius when > 0
    int size_px = 640;
};

/// Deterministic SVG of a planar trajectory: one polyline, optional exit
/// circle, fixed coordinate formatting, no timestamps. Same input, same
/// bytes. Empty paths are an error.
void emit_scatter(const PlanarPath& path, std::ostream& os, const ScatterOptions& options = {});
void emit_scatter_file(const PlanarPath& path, const std::filesystem::path& out,
                       const ScatterOptions& options = {});

/// Deterministic SVG line chart of y against x (used for radius-vs-time
/// companions).
void emit_line(std::span<const double> x, std::span<const double> y, std::ostream& os,
               int size_px = 640);
void emit_line_file(std::span<const double> x, std::span<const double> y,
                    const std::filesystem::path& out, int size_px = 640);

}  // namespace weaksde
