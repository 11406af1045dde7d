// Discrete curvature on triangle meshes.
//
// Gaussian curvature comes from the angle deficit at each vertex divided by
// its area weight; mean curvature from the cotangent Laplace-Beltrami
// operator applied to the coordinates (half the norm of the resulting
// mean-curvature-normal vector, signed by its projection onto the outward
// vertex normal so a sphere wound outward has H > 0). Principal curvatures,
// absolute and RMS curvature are derived from (H, K).
#pragma once

#include <cstdint>
#include <vector>

#include "curvegait/adjacency.hpp"
#include "curvegait/mesh.hpp"

namespace curvegait {

// Per-vertex interior angle sums and deficits. Interior vertices use
// 2*pi - sum(theta), boundary vertices pi - sum(theta). Degenerate triangles
// contribute no angles.
struct AngleDeficitTable {
    std::vector<double> angle_sum;  // radians
    std::vector<double> deficit;    // radians
};

AngleDeficitTable angle_deficits(const TriangleMesh& mesh, const OneRingTable& rings);

// Sum of deficits; equals 2*pi*chi for a closed mesh (discrete Gauss-Bonnet).
double gauss_bonnet_total(const AngleDeficitTable& table);

// K_i = deficit_i / area_i (1/m^2). Vertices with zero area get K = 0; callers
// exclude them via CurvatureField::zero_area.
std::vector<double> gaussian_field(const TriangleMesh& mesh, const OneRingTable& rings,
                                   const VertexAreas& areas);

// Signed mean curvature (1/m) from the cotangent Laplacian. Boundary vertices
// are computed from their open fan; consumers treat them as unreliable.
std::vector<double> mean_field(const TriangleMesh& mesh, const OneRingTable& rings,
                               const VertexAreas& areas);

struct PrincipalPair {
    double k1 = 0.0;  // k1 >= k2
    double k2 = 0.0;
    bool clamped = false;  // H^2 - K was negative and got clamped to zero
};

PrincipalPair principal_from_hk(double mean, double gaussian);

// The paper prints K_rms = sqrt(k1^2 + k2^2) / 2; the conventional RMS would
// divide inside the root. Default follows the printed formula.
enum class RmsConvention { HalfRootSum, RootMeanSquare };

struct DerivedPair {
    double k_abs = 0.0;
    double k_rms = 0.0;
};

DerivedPair derived_fields(double k1, double k2,
                           RmsConvention convention = RmsConvention::HalfRootSum);

enum class CurvatureType { Gaussian, Mean, Absolute, Rms, K1, K2 };

struct CurvatureField {
    std::vector<double> gaussian;  // 1/m^2
    std::vector<double> mean;      // 1/m, stored as (k1+k2)/2 so the identity is exact
    std::vector<double> k1, k2;    // 1/m
    std::vector<double> k_abs;     // 1/m
    std::vector<double> k_rms;     // 1/m
    std::vector<std::uint8_t> clamped;
    std::vector<std::uint8_t> boundary;
    std::vector<std::uint8_t> zero_area;

    std::size_t size() const { return gaussian.size(); }
    const std::vector<double>& values(CurvatureType type) const;
    // Included in regional means and symmetry aggregates.
    bool reliable(int v) const { return !boundary[v] && !zero_area[v]; }
};

CurvatureField curvature_field(const TriangleMesh& mesh, const OneRingTable& rings,
                               const VertexAreas& areas,
                               RmsConvention convention = RmsConvention::HalfRootSum);

// Convenience pipeline: rings -> areas (barycentric third) -> fields.
CurvatureField curvature_field(const TriangleMesh& mesh,
                               RmsConvention convention = RmsConvention::HalfRootSum);

}  // namespace curvegait
