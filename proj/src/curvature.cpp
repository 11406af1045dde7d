#include "curvegait/curvature.hpp"

#include <cmath>
#include <stdexcept>

namespace curvegait {

AngleDeficitTable angle_deficits(const TriangleMesh& mesh, const OneRingTable& rings) {
    if (rings.size() != mesh.vertex_count())
        throw std::runtime_error("one-ring table does not match mesh");

    AngleDeficitTable table;
    table.angle_sum.assign(mesh.vertex_count(), 0.0);
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        if (triangle_area(mesh, static_cast<int>(t)) < kDegenerateArea) continue;
        const Triangle& tri = mesh.triangles[t];
        for (int c = 0; c < 3; ++c) {
            const Vec3& p = mesh.vertices[tri[c]];
            const Vec3& q = mesh.vertices[tri[(c + 1) % 3]];
            const Vec3& r = mesh.vertices[tri[(c + 2) % 3]];
            table.angle_sum[tri[c]] += angle_between(q - p, r - p);
        }
    }
    table.deficit.resize(mesh.vertex_count());
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
        double full = rings.is_boundary(static_cast<int>(v)) ? M_PI : 2.0 * M_PI;
        table.deficit[v] = full - table.angle_sum[v];
    }
    return table;
}

double gauss_bonnet_total(const AngleDeficitTable& table) {
    double sum = 0.0;
    for (double d : table.deficit) sum += d;
    return sum;
}

std::vector<double> gaussian_field(const TriangleMesh& mesh, const OneRingTable& rings,
                                   const VertexAreas& areas) {
    if (areas.area.size() != mesh.vertex_count())
        throw std::runtime_error("vertex areas do not match mesh");
    AngleDeficitTable table = angle_deficits(mesh, rings);
    std::vector<double> k(mesh.vertex_count(), 0.0);
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
        if (areas.area[v] > 0.0) k[v] = table.deficit[v] / areas.area[v];
    }
    return k;
}

std::vector<double> mean_field(const TriangleMesh& mesh, const OneRingTable& rings,
                               const VertexAreas& areas) {
    if (areas.area.size() != mesh.vertex_count())
        throw std::runtime_error("vertex areas do not match mesh");
    if (rings.size() != mesh.vertex_count())
        throw std::runtime_error("one-ring table does not match mesh");

    // Accumulate the mean-curvature-normal vector
    //   Hvec_i = (1/(2 A_i)) * sum_j (cot a_ij + cot b_ij) (v_i - v_j)
    // by looping triangles: the angle at corner k weights edge (i, j).
    std::vector<Vec3> hvec(mesh.vertex_count());
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        if (triangle_area(mesh, static_cast<int>(t)) < kDegenerateArea) continue;
        const Triangle& tri = mesh.triangles[t];
        for (int c = 0; c < 3; ++c) {
            int i = tri[(c + 1) % 3], j = tri[(c + 2) % 3], k = tri[c];
            const Vec3& pk = mesh.vertices[k];
            Vec3 u = mesh.vertices[i] - pk;
            Vec3 v = mesh.vertices[j] - pk;
            double cot = dot(u, v) / norm(cross(u, v));
            Vec3 edge = mesh.vertices[i] - mesh.vertices[j];
            hvec[i] += edge * cot;
            hvec[j] -= edge * cot;
        }
    }

    std::vector<Vec3> normals = vertex_normals(mesh);
    std::vector<double> h(mesh.vertex_count(), 0.0);
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
        if (areas.area[v] <= 0.0) continue;
        Vec3 mc = hvec[v] / (2.0 * areas.area[v]);
        double magnitude = 0.5 * norm(mc);
        h[v] = dot(mc, normals[v]) >= 0.0 ? magnitude : -magnitude;
    }
    return h;
}

PrincipalPair principal_from_hk(double mean, double gaussian) {
    PrincipalPair out;
    double disc = mean * mean - gaussian;
    if (disc < 0.0) {
        disc = 0.0;
        out.clamped = true;
    }
    double s = std::sqrt(disc);
    out.k1 = mean + s;
    out.k2 = mean - s;
    return out;
}

DerivedPair derived_fields(double k1, double k2, RmsConvention convention) {
    DerivedPair out;
    out.k_abs = std::abs(k1) + std::abs(k2);
    double root = std::sqrt(k1 * k1 + k2 * k2);
    out.k_rms = convention == RmsConvention::HalfRootSum ? root / 2.0 : root / std::sqrt(2.0);
    return out;
}

const std::vector<double>& CurvatureField::values(CurvatureType type) const {
    switch (type) {
        case CurvatureType::Gaussian: return gaussian;
        case CurvatureType::Mean: return mean;
        case CurvatureType::Absolute: return k_abs;
        case CurvatureType::Rms: return k_rms;
        case CurvatureType::K1: return k1;
        case CurvatureType::K2: return k2;
    }
    return gaussian;
}

CurvatureField curvature_field(const TriangleMesh& mesh, const OneRingTable& rings,
                               const VertexAreas& areas, RmsConvention convention) {
    const std::size_t nv = mesh.vertex_count();
    CurvatureField field;
    field.gaussian = gaussian_field(mesh, rings, areas);
    std::vector<double> h_raw = mean_field(mesh, rings, areas);

    field.mean.resize(nv);
    field.k1.resize(nv);
    field.k2.resize(nv);
    field.k_abs.resize(nv);
    field.k_rms.resize(nv);
    field.clamped.assign(nv, 0);
    field.boundary.assign(nv, 0);
    field.zero_area.assign(nv, 0);

    for (std::size_t v = 0; v < nv; ++v) {
        PrincipalPair pr = principal_from_hk(h_raw[v], field.gaussian[v]);
        DerivedPair dv = derived_fields(pr.k1, pr.k2, convention);
        field.k1[v] = pr.k1;
        field.k2[v] = pr.k2;
        // Re-derive the stored mean so (k1 + k2) / 2 == mean holds bit-exactly.
        field.mean[v] = 0.5 * (pr.k1 + pr.k2);
        field.k_abs[v] = dv.k_abs;
        field.k_rms[v] = dv.k_rms;
        field.clamped[v] = pr.clamped ? 1 : 0;
        field.boundary[v] = rings.is_boundary(static_cast<int>(v)) ? 1 : 0;
        field.zero_area[v] = areas.area[v] > 0.0 ? 0 : 1;
    }
    return field;
}

CurvatureField curvature_field(const TriangleMesh& mesh, RmsConvention convention) {
    OneRingTable rings = build_one_rings(mesh);
    VertexAreas areas = vertex_areas(mesh, rings, AreaScheme::BarycentricThird);
    return curvature_field(mesh, rings, areas, convention);
}

}  // namespace curvegait
