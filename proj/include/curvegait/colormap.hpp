// Blue-green-red diverging color mapping for curvature fields: blue at and
// below vmin, green at the center value, red at and above vmax, linear in
// between (optionally gamma-shaped).
#pragma once

#include <vector>

#include "curvegait/mesh.hpp"

namespace curvegait {

enum class ScaleMode { SymmetricAboutCenter, MinMax };

struct ColorScale {
    double vmin = -1.0;
    double vmax = 1.0;
    double center = 0.0;
    ScaleMode mode = ScaleMode::SymmetricAboutCenter;
    double gamma = 1.0;

    // Throws std::invalid_argument unless vmin < vmax, vmin <= center <= vmax,
    // and symmetric scales have vmax - center == center - vmin.
    void check() const;
};

Rgb map_to_color(double value, const ColorScale& scale);

// One color per value; length must match the target mesh when exporting.
std::vector<Rgb> colorize(const std::vector<double>& values, const ColorScale& scale);

// Convenience: colorize a per-vertex field for a mesh (checks the length).
std::vector<Rgb> colorize_mesh(const TriangleMesh& mesh, const std::vector<double>& values,
                               const ColorScale& scale);

// Percentile with linear interpolation between order statistics (the numpy
// default). p in [0, 100]; data need not be sorted.
double percentile(std::vector<double> data, double p);

// Robust scale from the data. Symmetric mode centers on `center` and takes
// vmax = max(|p2|, |p98|) of the centered values, so at most 4% of samples
// clamp; an all-constant field falls back to vmax = center + 1. MinMax mode
// uses the exact data range (degenerate ranges get +/- 0.5 padding).
ColorScale auto_scale(const std::vector<double>& values,
                      ScaleMode mode = ScaleMode::SymmetricAboutCenter, double center = 0.0);

}  // namespace curvegait
