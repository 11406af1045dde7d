#include "isosurface.hpp"

#include <array>
#include <stdexcept>
#include <unordered_map>

#include "curvegait/parallel.hpp"

namespace curvegait::detail {

namespace {

// Cube corner c = dx + 2*dy + 4*dz.
constexpr int kCornerOffset[8][3] = {
    {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0},
    {0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1},
};

// Five-tet split; even-parity cubes put the central tet on the even-sum
// corners, odd-parity cubes on the odd-sum corners. Mirroring x maps one
// parity onto the other, which is what keeps the checkerboard symmetric.
constexpr int kTetsEven[5][4] = {
    {0, 3, 5, 6}, {1, 0, 3, 5}, {2, 0, 3, 6}, {4, 0, 5, 6}, {7, 3, 5, 6}};
constexpr int kTetsOdd[5][4] = {
    {1, 2, 4, 7}, {0, 1, 2, 4}, {3, 1, 2, 7}, {5, 1, 4, 7}, {6, 2, 4, 7}};

// Even permutations of a positively oriented tet bringing the inside corners
// to the front slots; winding rules below were derived once for the canonical
// tet and transfer along these permutations.
constexpr int kSingle[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 0, 1, 3}, {3, 0, 2, 1}};
constexpr int kPair[6][4] = {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2},
                             {1, 2, 0, 3}, {1, 3, 2, 0}, {2, 3, 0, 1}};
constexpr int kPairSlot[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

struct Tets {
    // corner ids per tet, orientation fixed positive; [parity][tet][corner]
    int corner[2][5][4];
};

Tets build_oriented_tets() {
    Tets tets;
    for (int parity = 0; parity < 2; ++parity) {
        const auto& src = parity == 0 ? kTetsEven : kTetsOdd;
        for (int t = 0; t < 5; ++t) {
            int a = src[t][0], b = src[t][1], c = src[t][2], d = src[t][3];
            auto at = [](int corner) {
                return Vec3{static_cast<double>(kCornerOffset[corner][0]),
                            static_cast<double>(kCornerOffset[corner][1]),
                            static_cast<double>(kCornerOffset[corner][2])};
            };
            double vol = dot(cross(at(b) - at(a), at(c) - at(a)), at(d) - at(a));
            if (vol < 0.0) std::swap(c, d);
            tets.corner[parity][t][0] = a;
            tets.corner[parity][t][1] = b;
            tets.corner[parity][t][2] = c;
            tets.corner[parity][t][3] = d;
        }
    }
    return tets;
}

constexpr double kEdgeClamp = 0.03;

}  // namespace

TriangleMesh extract_isosurface(const IsoGrid& grid,
                                const std::function<double(const Vec3&)>& field) {
    if (grid.nx < 2 || grid.ny < 1 || grid.nz < 1 || grid.cell <= 0.0)
        throw std::invalid_argument("isosurface grid is empty");
    if (grid.nx % 2 != 0)
        throw std::invalid_argument("isosurface grid needs an even cube count across x");

    const int px = grid.nx + 1, py = grid.ny + 1, pz = grid.nz + 1;
    auto point_id = [px, py](int i, int j, int k) {
        return (static_cast<std::size_t>(k) * py + j) * px + i;
    };

    std::vector<double> value(static_cast<std::size_t>(px) * py * pz);
    parallel_for(static_cast<std::size_t>(pz), [&](std::size_t k) {
        for (int j = 0; j < py; ++j)
            for (int i = 0; i < px; ++i)
                value[point_id(i, j, static_cast<int>(k))] =
                    field(grid.point(i, j, static_cast<int>(k)));
    });

    static const Tets tets = build_oriented_tets();

    TriangleMesh mesh;
    std::unordered_map<std::uint64_t, int> edge_vertex;
    edge_vertex.reserve(1 << 16);

    auto edge_point = [&](std::size_t a, std::size_t b, int ai, int aj, int ak, int bi, int bj,
                          int bk) {
        if (a > b) {
            std::swap(a, b);
            std::swap(ai, bi);
            std::swap(aj, bj);
            std::swap(ak, bk);
        }
        std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
        auto it = edge_vertex.find(key);
        if (it != edge_vertex.end()) return it->second;
        double va = value[a], vb = value[b];
        double t = va / (va - vb);
        if (t < kEdgeClamp) t = kEdgeClamp;
        if (t > 1.0 - kEdgeClamp) t = 1.0 - kEdgeClamp;
        Vec3 pa = grid.point(ai, aj, ak), pb = grid.point(bi, bj, bk);
        int idx = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back(pa + (pb - pa) * t);
        edge_vertex.emplace(key, idx);
        return idx;
    };

    // Per-cube scratch: global id and lattice coords of the 8 corners.
    std::size_t gid[8];
    int gx[8], gy[8], gz[8];
    bool inside[8];

    for (int k = 0; k < grid.nz; ++k) {
        for (int j = 0; j < grid.ny; ++j) {
            for (int i = 0; i < grid.nx; ++i) {
                bool any_in = false, any_out = false;
                for (int c = 0; c < 8; ++c) {
                    gx[c] = i + kCornerOffset[c][0];
                    gy[c] = j + kCornerOffset[c][1];
                    gz[c] = k + kCornerOffset[c][2];
                    gid[c] = point_id(gx[c], gy[c], gz[c]);
                    inside[c] = value[gid[c]] < 0.0;
                    (inside[c] ? any_in : any_out) = true;
                }
                if (!any_in || !any_out) continue;

                int parity = (i + j + k) & 1;
                for (int t = 0; t < 5; ++t) {
                    const int* tc = tets.corner[parity][t];
                    int mask = 0;
                    for (int s = 0; s < 4; ++s)
                        if (inside[tc[s]]) mask |= 1 << s;
                    if (mask == 0 || mask == 0xF) continue;

                    auto ev = [&](int slot_a, int slot_b) {
                        int ca = tc[slot_a], cb = tc[slot_b];
                        return edge_point(gid[ca], gid[cb], gx[ca], gy[ca], gz[ca], gx[cb], gy[cb],
                                          gz[cb]);
                    };

                    int bits = 0;
                    for (int s = 0; s < 4; ++s) bits += (mask >> s) & 1;
                    if (bits == 1 || bits == 3) {
                        int pivot = 0;
                        for (int s = 0; s < 4; ++s) {
                            bool in = (mask >> s) & 1;
                            if ((bits == 1) == in) pivot = s;
                        }
                        const int* p = kSingle[pivot];
                        int e1 = ev(p[0], p[1]), e2 = ev(p[0], p[2]), e3 = ev(p[0], p[3]);
                        if (bits == 1)
                            mesh.triangles.push_back({e1, e2, e3});
                        else
                            mesh.triangles.push_back({e1, e3, e2});
                    } else {
                        int pair_idx = -1;
                        for (int q = 0; q < 6; ++q) {
                            int m = (1 << kPairSlot[q][0]) | (1 << kPairSlot[q][1]);
                            if (m == mask) pair_idx = q;
                        }
                        const int* p = kPair[pair_idx];
                        int e02 = ev(p[0], p[2]), e03 = ev(p[0], p[3]);
                        int e12 = ev(p[1], p[2]), e13 = ev(p[1], p[3]);
                        // Split the quad through its centroid. A diagonal
                        // split would pick a slot-order-dependent diagonal,
                        // which is not mirror-covariant; the centroid fan is.
                        // The center vertex is interior to the tet, so it is
                        // never shared and the mesh stays watertight.
                        Vec3 center = (mesh.vertices[e02] + mesh.vertices[e03] +
                                       mesh.vertices[e13] + mesh.vertices[e12]) *
                                      0.25;
                        int ec = static_cast<int>(mesh.vertices.size());
                        mesh.vertices.push_back(center);
                        mesh.triangles.push_back({e02, e03, ec});
                        mesh.triangles.push_back({e03, e13, ec});
                        mesh.triangles.push_back({e13, e12, ec});
                        mesh.triangles.push_back({e12, e02, ec});
                    }
                }
            }
        }
    }

    return mesh;
}

}  // namespace curvegait::detail
