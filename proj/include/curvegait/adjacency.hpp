// One-ring adjacency (ordered neighbor fans) and per-vertex area weights.
#pragma once

#include <vector>

#include "curvegait/mesh.hpp"

namespace curvegait {

// Per-vertex ordered one-ring. Neighbors follow the triangle winding; for an
// interior vertex of a manifold mesh the fan is closed and neighbor count ==
// incident triangle count, for a boundary vertex the fan is an open chain and
// neighbor count == incident triangle count + 1.
struct OneRingTable {
    std::vector<std::vector<int>> neighbors;
    std::vector<std::vector<int>> incident_triangles;
    std::vector<std::uint8_t> boundary;

    std::size_t size() const { return neighbors.size(); }
    bool is_boundary(int v) const { return boundary[v] != 0; }
};

// Throws std::runtime_error naming the offending edge when an edge is shared
// by more than two triangles, or the vertex when its fan is not a single
// chain/cycle (non-manifold vertex).
OneRingTable build_one_rings(const TriangleMesh& mesh);

enum class AreaScheme {
    BarycentricThird,  // each triangle's area split equally between its corners
    MixedVoronoi,      // Meyer et al. mixed Voronoi cells (obtuse-safe variant)
};

struct VertexAreas {
    std::vector<double> area;  // m^2, one per vertex
    AreaScheme scheme = AreaScheme::BarycentricThird;
};

// Both schemes partition the surface exactly: sum(area) == total mesh area.
// `rings` is accepted to mirror the operator pipeline but only the mesh is
// consulted. Degenerate triangles contribute nothing.
VertexAreas vertex_areas(const TriangleMesh& mesh, const OneRingTable& rings,
                         AreaScheme scheme = AreaScheme::BarycentricThird);

}  // namespace curvegait
