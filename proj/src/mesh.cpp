#include "curvegait/mesh.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace curvegait {

namespace {

// Undirected edge key; vertex indices fit comfortably in 32 bits.
inline std::uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    }
};

}  // namespace

void TriangleMesh::check_structure() const {
    const int nv = static_cast<int>(vertices.size());
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        const Triangle& tri = triangles[t];
        for (int c = 0; c < 3; ++c) {
            if (tri[c] < 0 || tri[c] >= nv)
                throw std::runtime_error("triangle " + std::to_string(t) +
                                         " references vertex " + std::to_string(tri[c]) +
                                         " outside [0, " + std::to_string(nv) + ")");
        }
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
            throw std::runtime_error("triangle " + std::to_string(t) + " repeats a vertex index");
    }
    if (!normals.empty()) {
        if (normals.size() != vertices.size())
            throw std::runtime_error("normal count does not match vertex count");
        for (const Vec3& n : normals) {
            if (std::abs(norm(n) - 1.0) > 1e-6)
                throw std::runtime_error("vertex normal is not unit length");
        }
    }
}

double triangle_area(const TriangleMesh& mesh, int t) {
    const Triangle& tri = mesh.triangles[t];
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3& b = mesh.vertices[tri[1]];
    const Vec3& c = mesh.vertices[tri[2]];
    return 0.5 * norm(cross(b - a, c - a));
}

Vec3 triangle_normal(const TriangleMesh& mesh, int t) {
    const Triangle& tri = mesh.triangles[t];
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3& b = mesh.vertices[tri[1]];
    const Vec3& c = mesh.vertices[tri[2]];
    return normalized(cross(b - a, c - a));
}

double total_surface_area(const TriangleMesh& mesh) {
    double sum = 0.0;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
        sum += triangle_area(mesh, static_cast<int>(t));
    return sum;
}

std::vector<Vec3> vertex_normals(const TriangleMesh& mesh) {
    std::vector<Vec3> out(mesh.vertex_count());
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        if (triangle_area(mesh, static_cast<int>(t)) < kDegenerateArea) continue;
        const Triangle& tri = mesh.triangles[t];
        Vec3 fn = triangle_normal(mesh, static_cast<int>(t));
        for (int c = 0; c < 3; ++c) {
            const Vec3& p = mesh.vertices[tri[c]];
            const Vec3& q = mesh.vertices[tri[(c + 1) % 3]];
            const Vec3& r = mesh.vertices[tri[(c + 2) % 3]];
            out[tri[c]] += fn * angle_between(q - p, r - p);
        }
    }
    for (Vec3& n : out) n = normalized(n);
    return out;
}

ValidationReport validate(const TriangleMesh& mesh) {
    ValidationReport rep;
    rep.vertex_count = mesh.vertex_count();
    rep.triangle_count = mesh.triangle_count();

    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        if (triangle_area(mesh, static_cast<int>(t)) < kDegenerateArea)
            rep.degenerate_triangles.push_back(static_cast<int>(t));
    }

    std::unordered_map<std::uint64_t, int> edge_use;
    edge_use.reserve(mesh.triangle_count() * 3);
    for (const Triangle& tri : mesh.triangles) {
        for (int c = 0; c < 3; ++c) {
            ++edge_use[edge_key(tri[c], tri[(c + 1) % 3])];
        }
    }
    rep.edge_count = edge_use.size();
    for (const auto& [key, count] : edge_use) {
        if (count == 1) ++rep.boundary_edge_count;
        if (count > 2)
            rep.nonmanifold_edges.emplace_back(static_cast<int>(key >> 32),
                                               static_cast<int>(key & 0xffffffffu));
    }
    std::sort(rep.nonmanifold_edges.begin(), rep.nonmanifold_edges.end());

    rep.euler_characteristic = static_cast<long>(rep.vertex_count) -
                               static_cast<long>(rep.edge_count) +
                               static_cast<long>(rep.triangle_count);

    if (!mesh.vertices.empty()) {
        DisjointSet dsu(mesh.vertex_count());
        for (const Triangle& tri : mesh.triangles) {
            dsu.unite(tri[0], tri[1]);
            dsu.unite(tri[1], tri[2]);
        }
        for (std::size_t v = 0; v < mesh.vertex_count(); ++v)
            if (dsu.find(static_cast<int>(v)) == static_cast<int>(v)) ++rep.connected_components;
    }

    // Duplicate detection with a spatial hash at the 1e-9 m threshold.
    constexpr double cell = 1e-9;
    std::unordered_map<std::uint64_t, std::vector<int>> grid;
    grid.reserve(mesh.vertex_count());
    auto cell_key = [](long long ix, long long iy, long long iz) {
        std::uint64_t h = static_cast<std::uint64_t>(ix) * 73856093ull;
        h ^= static_cast<std::uint64_t>(iy) * 19349663ull;
        h ^= static_cast<std::uint64_t>(iz) * 83492791ull;
        return h;
    };
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
        const Vec3& p = mesh.vertices[v];
        long long ix = static_cast<long long>(std::floor(p.x / cell));
        long long iy = static_cast<long long>(std::floor(p.y / cell));
        long long iz = static_cast<long long>(std::floor(p.z / cell));
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy)
                for (long long dz = -1; dz <= 1; ++dz) {
                    auto it = grid.find(cell_key(ix + dx, iy + dy, iz + dz));
                    if (it == grid.end()) continue;
                    for (int other : it->second)
                        if (distance(p, mesh.vertices[other]) < 1e-9) ++rep.duplicate_vertex_pairs;
                }
        grid[cell_key(ix, iy, iz)].push_back(static_cast<int>(v));
    }

    return rep;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    os << "vertices: " << vertex_count << "\n"
       << "triangles: " << triangle_count << "\n"
       << "edges: " << edge_count << "\n"
       << "euler characteristic: " << euler_characteristic << "\n"
       << "boundary edges: " << boundary_edge_count << "\n"
       << "connected components: " << connected_components << "\n"
       << "degenerate triangles: " << degenerate_triangles.size() << "\n"
       << "non-manifold edges: " << nonmanifold_edges.size() << "\n"
       << "duplicate vertex pairs: " << duplicate_vertex_pairs << "\n"
       << "closed: " << (closed() ? "yes" : "no") << ", manifold: " << (manifold() ? "yes" : "no")
       << "\n";
    return os.str();
}

}  // namespace curvegait
