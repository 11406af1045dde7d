// Procedural test geometry with known analytic curvature.
#pragma once

#include "curvegait/mesh.hpp"

namespace curvegait {

// Subdivided icosahedron projected onto a sphere. subdivisions = 0 gives the
// icosahedron (12 vertices); each level quadruples the triangle count
// (level 3 -> 642 vertices, level 4 -> 2562).
TriangleMesh icosphere(int subdivisions, double radius = 1.0, Vec3 center = {});

// Open cylinder tube of given radius about the y axis, spanning
// y in [-length/2, length/2]. Both end rings are boundary.
TriangleMesh cylinder_tube(double radius, double length, int radial_segments,
                           int length_segments);

// Closed torus: R = distance from axis to tube center, r = tube radius.
// Vertex at (iu, iv) has tube angle v = 2*pi*iv/segments_v where v = 0 is the
// outer equator and v = pi the inner one. Analytic gaussian curvature is
// cos(v) / (r * (R + r*cos(v))).
TriangleMesh torus_grid(double major_radius, double minor_radius, int segments_u,
                        int segments_v);

// Regular triangulated grid in the y = 0 plane, size_x by size_z meters.
TriangleMesh plane_grid(double size_x, double size_z, int cells_x, int cells_z);

}  // namespace curvegait
