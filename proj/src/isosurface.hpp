// Internal: isosurface extraction by marching tetrahedra.
//
// Cubes are split into five tetrahedra with checkerboard parity so adjacent
// cubes share face diagonals, which makes the output watertight. The cube
// count across x is even and x coordinates are computed as (i - nx/2) * cell,
// so a field with f(-x,y,z) = f(x,y,z) yields an exactly mirror-symmetric
// mesh. Triangle winding keeps normals on the f > 0 side (outside).
#pragma once

#include <functional>

#include "curvegait/mesh.hpp"

namespace curvegait::detail {

struct IsoGrid {
    int nx = 0, ny = 0, nz = 0;  // cube counts; nx must be even
    double cell = 0.0;
    double y0 = 0.0, z0 = 0.0;  // x is centered: x(i) = (i - nx/2) * cell

    Vec3 point(int i, int j, int k) const {
        return {static_cast<double>(i - nx / 2) * cell, y0 + j * cell, z0 + k * cell};
    }
};

// field < 0 inside. Interpolation parameters are clamped away from the grid
// points (3%) so no output triangle degenerates.
TriangleMesh extract_isosurface(const IsoGrid& grid,
                                const std::function<double(const Vec3&)>& field);

}  // namespace curvegait::detail
