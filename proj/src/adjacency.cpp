#include "curvegait/adjacency.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace curvegait {

namespace {

inline std::uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

}  // namespace

OneRingTable build_one_rings(const TriangleMesh& mesh) {
    mesh.check_structure();
    const std::size_t nv = mesh.vertex_count();

    {
        std::unordered_map<std::uint64_t, int> edge_use;
        edge_use.reserve(mesh.triangle_count() * 3);
        for (const Triangle& tri : mesh.triangles)
            for (int c = 0; c < 3; ++c) ++edge_use[edge_key(tri[c], tri[(c + 1) % 3])];
        for (const auto& [key, count] : edge_use) {
            if (count > 2)
                throw std::runtime_error(
                    "non-manifold edge (" + std::to_string(static_cast<int>(key >> 32)) + ", " +
                    std::to_string(static_cast<int>(key & 0xffffffffu)) + ") shared by " +
                    std::to_string(count) + " triangles");
        }
    }

    // For each vertex v and incident triangle (v, a, b) in winding order,
    // record a -> (b, triangle). Walking the successor map orders the fan.
    std::vector<std::unordered_map<int, std::pair<int, int>>> succ(nv);
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const Triangle& tri = mesh.triangles[t];
        for (int c = 0; c < 3; ++c) {
            int v = tri[c], a = tri[(c + 1) % 3], b = tri[(c + 2) % 3];
            auto [it, inserted] = succ[v].emplace(a, std::make_pair(b, static_cast<int>(t)));
            if (!inserted)
                throw std::runtime_error("non-manifold fan at vertex " + std::to_string(v) +
                                         ": duplicate winding edge");
        }
    }

    OneRingTable table;
    table.neighbors.resize(nv);
    table.incident_triangles.resize(nv);
    table.boundary.assign(nv, 0);

    for (std::size_t v = 0; v < nv; ++v) {
        auto& out = succ[v];
        if (out.empty()) continue;  // isolated vertex: empty ring, not boundary-flagged

        // A fan start is a neighbor that never appears as a successor.
        // Exactly one start -> open chain (boundary); none -> closed cycle.
        int start = -1;
        int start_count = 0;
        {
            std::unordered_map<int, int> indegree;
            for (const auto& [a, bt] : out) indegree[bt.first] += 1;
            std::vector<int> starts;
            for (const auto& [a, bt] : out)
                if (indegree.find(a) == indegree.end()) starts.push_back(a);
            start_count = static_cast<int>(starts.size());
            if (start_count > 0) start = *std::min_element(starts.begin(), starts.end());
        }
        if (start_count > 1)
            throw std::runtime_error("non-manifold vertex " + std::to_string(v) +
                                     ": fan splits into multiple chains");

        bool is_boundary = (start_count == 1);
        if (!is_boundary) {
            // Closed cycle: start anywhere deterministic (smallest neighbor).
            start = out.begin()->first;
            for (const auto& [a, bt] : out) start = std::min(start, a);
        }

        std::vector<int>& nbrs = table.neighbors[v];
        std::vector<int>& tris = table.incident_triangles[v];
        int cur = start;
        nbrs.push_back(cur);
        while (true) {
            auto it = out.find(cur);
            if (it == out.end()) break;  // open chain ended
            tris.push_back(it->second.second);
            cur = it->second.first;
            if (cur == start) break;  // cycle closed
            nbrs.push_back(cur);
            if (nbrs.size() > out.size() + 1)
                throw std::runtime_error("non-manifold vertex " + std::to_string(v) +
                                         ": fan walk does not terminate");
        }
        if (tris.size() != out.size())
            throw std::runtime_error("non-manifold vertex " + std::to_string(v) +
                                     ": fan visits only part of the incident triangles");
        table.boundary[v] = is_boundary ? 1 : 0;
    }

    return table;
}

VertexAreas vertex_areas(const TriangleMesh& mesh, const OneRingTable& rings, AreaScheme scheme) {
    if (rings.size() != mesh.vertex_count())
        throw std::runtime_error("one-ring table does not match mesh");

    VertexAreas out;
    out.scheme = scheme;
    out.area.assign(mesh.vertex_count(), 0.0);

    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const Triangle& tri = mesh.triangles[t];
        double area = triangle_area(mesh, static_cast<int>(t));
        if (area < kDegenerateArea) continue;

        if (scheme == AreaScheme::BarycentricThird) {
            double third = area / 3.0;
            for (int c = 0; c < 3; ++c) out.area[tri[c]] += third;
            continue;
        }

        // Mixed Voronoi (Meyer et al.): true Voronoi cell areas for non-obtuse
        // triangles, area/2 at the obtuse corner and area/4 elsewhere otherwise.
        const Vec3& p0 = mesh.vertices[tri[0]];
        const Vec3& p1 = mesh.vertices[tri[1]];
        const Vec3& p2 = mesh.vertices[tri[2]];
        double a0 = angle_between(p1 - p0, p2 - p0);
        double a1 = angle_between(p2 - p1, p0 - p1);
        double a2 = angle_between(p0 - p2, p1 - p2);
        constexpr double half_pi = 1.5707963267948966;
        if (a0 <= half_pi && a1 <= half_pi && a2 <= half_pi) {
            double e01 = norm2(p1 - p0), e12 = norm2(p2 - p1), e20 = norm2(p0 - p2);
            auto cot = [](double ang) { return std::cos(ang) / std::sin(ang); };
            out.area[tri[0]] += (e01 * cot(a2) + e20 * cot(a1)) / 8.0;
            out.area[tri[1]] += (e01 * cot(a2) + e12 * cot(a0)) / 8.0;
            out.area[tri[2]] += (e20 * cot(a1) + e12 * cot(a0)) / 8.0;
        } else {
            int obtuse = a0 > half_pi ? 0 : (a1 > half_pi ? 1 : 2);
            for (int c = 0; c < 3; ++c)
                out.area[tri[c]] += (c == obtuse) ? area / 2.0 : area / 4.0;
        }
    }

    return out;
}

}  // namespace curvegait
