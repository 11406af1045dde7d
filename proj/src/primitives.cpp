#include "curvegait/primitives.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace curvegait {

TriangleMesh icosphere(int subdivisions, double radius, Vec3 center) {
    if (subdivisions < 0 || subdivisions > 8)
        throw std::invalid_argument("icosphere subdivisions must be in [0, 8]");
    if (radius <= 0.0) throw std::invalid_argument("icosphere radius must be positive");

    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    TriangleMesh mesh;
    mesh.vertices = {
        {-1, phi, 0}, {1, phi, 0},   {-1, -phi, 0}, {1, -phi, 0},
        {0, -1, phi}, {0, 1, phi},   {0, -1, -phi}, {0, 1, -phi},
        {phi, 0, -1}, {phi, 0, 1},   {-phi, 0, -1}, {-phi, 0, 1},
    };
    mesh.triangles = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
    };

    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            Vec3 m = (mesh.vertices[a] + mesh.vertices[b]) * 0.5;
            int idx = static_cast<int>(mesh.vertices.size());
            mesh.vertices.push_back(m);
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<Triangle> next;
        next.reserve(mesh.triangles.size() * 4);
        for (const Triangle& t : mesh.triangles) {
            int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
            next.push_back({t[0], ab, ca});
            next.push_back({t[1], bc, ab});
            next.push_back({t[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        mesh.triangles = std::move(next);
    }

    for (Vec3& v : mesh.vertices) v = center + normalized(v) * radius;
    return mesh;
}

TriangleMesh cylinder_tube(double radius, double length, int radial_segments,
                           int length_segments) {
    if (radius <= 0.0 || length <= 0.0)
        throw std::invalid_argument("cylinder radius and length must be positive");
    if (radial_segments < 3 || length_segments < 1)
        throw std::invalid_argument("cylinder needs >= 3 radial and >= 1 length segments");

    TriangleMesh mesh;
    const int nu = radial_segments;
    for (int j = 0; j <= length_segments; ++j) {
        double y = -length / 2.0 + length * j / length_segments;
        for (int i = 0; i < nu; ++i) {
            double a = 2.0 * M_PI * i / nu;
            mesh.vertices.push_back({radius * std::cos(a), y, radius * std::sin(a)});
        }
    }
    auto idx = [nu](int i, int j) { return j * nu + (i % nu); };
    for (int j = 0; j < length_segments; ++j) {
        for (int i = 0; i < nu; ++i) {
            int a = idx(i, j), b = idx(i + 1, j), c = idx(i + 1, j + 1), d = idx(i, j + 1);
            // Outward winding (normals away from the axis).
            mesh.triangles.push_back({a, c, b});
            mesh.triangles.push_back({a, d, c});
        }
    }
    return mesh;
}

TriangleMesh torus_grid(double major_radius, double minor_radius, int segments_u,
                        int segments_v) {
    if (major_radius <= minor_radius || minor_radius <= 0.0)
        throw std::invalid_argument("torus needs 0 < minor_radius < major_radius");
    if (segments_u < 3 || segments_v < 3)
        throw std::invalid_argument("torus needs >= 3 segments on both directions");

    TriangleMesh mesh;
    for (int iv = 0; iv < segments_v; ++iv) {
        double v = 2.0 * M_PI * iv / segments_v;
        for (int iu = 0; iu < segments_u; ++iu) {
            double u = 2.0 * M_PI * iu / segments_u;
            double rr = major_radius + minor_radius * std::cos(v);
            mesh.vertices.push_back(
                {rr * std::cos(u), minor_radius * std::sin(v), rr * std::sin(u)});
        }
    }
    auto idx = [&](int iu, int iv) {
        return ((iv % segments_v + segments_v) % segments_v) * segments_u +
               ((iu % segments_u + segments_u) % segments_u);
    };
    for (int iv = 0; iv < segments_v; ++iv) {
        for (int iu = 0; iu < segments_u; ++iu) {
            int a = idx(iu, iv), b = idx(iu + 1, iv), c = idx(iu + 1, iv + 1), d = idx(iu, iv + 1);
            mesh.triangles.push_back({a, c, b});
            mesh.triangles.push_back({a, d, c});
        }
    }
    return mesh;
}

TriangleMesh plane_grid(double size_x, double size_z, int cells_x, int cells_z) {
    if (size_x <= 0.0 || size_z <= 0.0)
        throw std::invalid_argument("plane size must be positive");
    if (cells_x < 1 || cells_z < 1) throw std::invalid_argument("plane needs >= 1 cell per side");

    TriangleMesh mesh;
    for (int j = 0; j <= cells_z; ++j) {
        for (int i = 0; i <= cells_x; ++i) {
            mesh.vertices.push_back(
                {-size_x / 2.0 + size_x * i / cells_x, 0.0, -size_z / 2.0 + size_z * j / cells_z});
        }
    }
    auto idx = [&](int i, int j) { return j * (cells_x + 1) + i; };
    for (int j = 0; j < cells_z; ++j) {
        for (int i = 0; i < cells_x; ++i) {
            int a = idx(i, j), b = idx(i + 1, j), c = idx(i + 1, j + 1), d = idx(i, j + 1);
            // Plane normal points +y.
            mesh.triangles.push_back({a, c, b});
            mesh.triangles.push_back({a, d, c});
        }
    }
    return mesh;
}

}  // namespace curvegait
