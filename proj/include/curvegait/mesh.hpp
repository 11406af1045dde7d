// Indexed triangle mesh container plus structural validation.
//
// Conventions:
// - Positions are meters, double precision.
// - Triangles are 0-based index triples, counter-clockwise seen from outside.
// - Meshes are treated as immutable once built; derived tables (adjacency,
//   areas, curvature fields) reference vertices by index.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "curvegait/vec3.hpp"

namespace curvegait {

using Triangle = std::array<int, 3>;

// 8-bit per-channel vertex color as stored in OBJ/PLY output.
struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    bool operator==(const Rgb&) const = default;
};

// Triangles thinner than this (area in m^2) count as degenerate: validate()
// reports them and the curvature operators skip their contributions.
inline constexpr double kDegenerateArea = 1e-12;

struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<Triangle> triangles;
    std::vector<Vec3> normals;  // optional; empty or one unit normal per vertex

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t triangle_count() const { return triangles.size(); }

    // Throws std::runtime_error on out-of-range or repeated indices, or on a
    // normal count/length mismatch.
    void check_structure() const;
};

double triangle_area(const TriangleMesh& mesh, int t);
// Unit normal of triangle t (zero vector for degenerate triangles).
Vec3 triangle_normal(const TriangleMesh& mesh, int t);
double total_surface_area(const TriangleMesh& mesh);

// Per-vertex outward normals, averaging incident face normals weighted by the
// incident corner angle. Zero vector for isolated vertices.
std::vector<Vec3> vertex_normals(const TriangleMesh& mesh);

// Report-only structural analysis: never throws on bad geometry.
struct ValidationReport {
    std::size_t vertex_count = 0;
    std::size_t triangle_count = 0;
    std::size_t edge_count = 0;
    long euler_characteristic = 0;  // V - E + F
    std::size_t boundary_edge_count = 0;
    std::size_t connected_components = 0;
    std::vector<int> degenerate_triangles;               // area < kDegenerateArea
    std::vector<std::pair<int, int>> nonmanifold_edges;  // shared by > 2 triangles
    std::size_t duplicate_vertex_pairs = 0;              // distance < 1e-9 m

    bool closed() const { return boundary_edge_count == 0; }
    bool manifold() const { return nonmanifold_edges.empty(); }
    bool valid() const { return manifold() && degenerate_triangles.empty(); }

    std::string summary() const;
};

ValidationReport validate(const TriangleMesh& mesh);

}  // namespace curvegait
