#include "curvegait/body.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "curvegait/adjacency.hpp"
#include "curvegait/parallel.hpp"
#include "isosurface.hpp"

namespace curvegait {

namespace {

// One blended primitive: a capsule (sphere when a == b). `bone` names the
// skeleton joint whose motion carries this body part.
struct Part {
    Vec3 a, b;
    double radius = 0.0;
    int bone = -1;
};

double part_distance(const Part& part, const Vec3& p) {
    return point_segment_distance(p, part.a, part.b) - part.radius;
}

// Distance and its spatial gradient (direction away from the capsule axis).
std::pair<double, Vec3> part_distance_grad(const Part& part, const Vec3& p) {
    Vec3 ab = part.b - part.a;
    double len2 = norm2(ab);
    double t = len2 > 0.0 ? std::clamp(dot(p - part.a, ab) / len2, 0.0, 1.0) : 0.0;
    Vec3 axis_point = part.a + ab * t;
    Vec3 offset = p - axis_point;
    double d = norm(offset);
    Vec3 dir = d > 0.0 ? offset / d : Vec3{0, 1, 0};
    return {d - part.radius, dir};
}

// Exponential smooth union, log-sum-exp stabilized. Fully symmetric in its
// arguments, so a mirror-symmetric part list gives a mirror-symmetric field.
double smooth_union(const std::vector<Part>& parts, const Vec3& p, double k) {
    double m = part_distance(parts[0], p);
    std::vector<double> d(parts.size());
    d[0] = m;
    for (std::size_t i = 1; i < parts.size(); ++i) {
        d[i] = part_distance(parts[i], p);
        if (d[i] < m) m = d[i];
    }
    double sum = 0.0;
    for (double di : d) {
        double e = (di - m) / k;
        if (e < 34.0) sum += std::exp(-e);  // farther parts underflow anyway
    }
    return m - k * std::log(sum);
}

std::pair<double, Vec3> smooth_union_grad(const std::vector<Part>& parts, const Vec3& p,
                                          double k) {
    std::vector<std::pair<double, Vec3>> dg(parts.size());
    double m = 1e30;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        dg[i] = part_distance_grad(parts[i], p);
        m = std::min(m, dg[i].first);
    }
    double sum = 0.0;
    Vec3 grad{};
    for (const auto& [d, g] : dg) {
        double e = (d - m) / k;
        if (e >= 34.0) continue;
        double w = std::exp(-e);
        sum += w;
        grad += g * w;
    }
    return {m - k * std::log(sum), grad / sum};
}

struct Layout {
    Skeleton skeleton;
    std::vector<Part> parts;
    double blend = 0.0;   // smooth-union falloff
    double min_radius = 0.0;
};

Vec3 mirror_x(const Vec3& v) { return {-v.x, v.y, v.z}; }

Layout build_layout(const BodyParams& params) {
    const double h = params.height;

    // Proportions as fractions of height; left is +x. The right half mirrors
    // the left exactly (negated x of the same doubles).
    const double hip_y = params.hip_height();
    const Vec3 pelvis{0.0, hip_y, 0.0};
    const Vec3 chest{0.0, 0.72 * h, 0.0};
    const Vec3 neck{0.0, 0.87 * h, 0.0};
    const Vec3 hip_l{0.052 * h, hip_y, 0.0};
    const Vec3 knee_l{0.052 * h, BodyParams::kKneeRatio * h, 0.0};
    const Vec3 ankle_l{0.052 * h, params.ankle_height(), 0.0};
    const Vec3 shoulder_l{0.115 * h, 0.818 * h, 0.0};
    // Arms hang with a slight abduction so they never blend into the torso.
    const Vec3 arm_dir{std::sin(0.24), -std::cos(0.24), 0.0};
    const Vec3 elbow_l = shoulder_l + arm_dir * (0.186 * h);
    const Vec3 wrist_l = elbow_l + arm_dir * (0.160 * h);

    Layout layout;
    auto set = [&](int id, const char* name, int parent, const Vec3& rest) {
        layout.skeleton.joints[id] = Joint{name, parent, rest};
    };
    set(kPelvis, "pelvis", -1, pelvis);
    set(kChest, "chest", kPelvis, chest);
    set(kNeck, "neck", kChest, neck);
    set(kHipL, "hip_l", kPelvis, hip_l);
    set(kKneeL, "knee_l", kHipL, knee_l);
    set(kAnkleL, "ankle_l", kKneeL, ankle_l);
    set(kHipR, "hip_r", kPelvis, mirror_x(hip_l));
    set(kKneeR, "knee_r", kHipR, mirror_x(knee_l));
    set(kAnkleR, "ankle_r", kKneeR, mirror_x(ankle_l));
    set(kShoulderL, "shoulder_l", kChest, shoulder_l);
    set(kElbowL, "elbow_l", kShoulderL, elbow_l);
    set(kWristL, "wrist_l", kElbowL, wrist_l);
    set(kShoulderR, "shoulder_r", kChest, mirror_x(shoulder_l));
    set(kElbowR, "elbow_r", kShoulderR, mirror_x(elbow_l));
    set(kWristR, "wrist_r", kElbowR, mirror_x(wrist_l));

    auto add = [&](Vec3 a, Vec3 b, double r, int bone) {
        layout.parts.push_back(Part{a, b, r, bone});
    };
    auto add_pair = [&](Vec3 a, Vec3 b, double r, int bone_l, int bone_r) {
        add(a, b, r, bone_l);
        add(mirror_x(a), mirror_x(b), r, bone_r);
    };

    // Torso and head (z offsets lean the column slightly; they also keep the
    // field from having accidental exact symmetries in z).
    add({0.0, hip_y - 0.015 * h, 0.0}, {0.0, 0.655 * h, 0.002 * h}, 0.058 * h, kPelvis);
    add({-0.052 * h, hip_y, 0.0}, {0.052 * h, hip_y, 0.0}, 0.050 * h, kPelvis);
    add({0.0, 0.655 * h, 0.002 * h}, {0.0, 0.80 * h, 0.004 * h}, 0.062 * h, kChest);
    add({-0.10 * h, 0.818 * h, 0.0}, {0.10 * h, 0.818 * h, 0.0}, 0.034 * h, kChest);
    add({0.0, 0.82 * h, 0.004 * h}, {0.0, 0.895 * h, 0.006 * h}, 0.0255 * h, kChest);
    add({0.0, 0.905 * h, 0.008 * h}, {0.0, 0.952 * h, 0.008 * h}, 0.048 * h, kNeck);

    // Legs. The kneecap bump gives the knee a localized gaussian-curvature
    // maximum even when the leg is straight.
    const double knee_y = BodyParams::kKneeRatio * h;
    add_pair(hip_l, knee_l, 0.040 * h, kHipL, kHipR);
    add_pair(knee_l, ankle_l, 0.0295 * h, kKneeL, kKneeR);
    add_pair({0.052 * h, knee_y + 0.002 * h, 0.027 * h},
             {0.052 * h, knee_y + 0.002 * h, 0.027 * h}, 0.018 * h, kHipL, kHipR);
    add_pair({0.052 * h, 0.026 * h, -0.035 * h}, {0.052 * h, 0.023 * h, 0.095 * h}, 0.0235 * h,
             kAnkleL, kAnkleR);

    // Arms.
    add_pair(shoulder_l, elbow_l, 0.0235 * h, kShoulderL, kShoulderR);
    add_pair(elbow_l, wrist_l, 0.019 * h, kElbowL, kElbowR);
    add_pair(wrist_l, wrist_l + arm_dir * (0.075 * h), 0.0145 * h, kWristL, kWristR);

    layout.blend = 0.009 * h;
    layout.min_radius = 0.0145 * h;
    return layout;
}

bool is_leg_bone(int bone) {
    return bone == kHipL || bone == kKneeL || bone == kAnkleL || bone == kHipR ||
           bone == kKneeR || bone == kAnkleR;
}

std::vector<std::pair<int, double>> skin_weights_at(const Layout& layout, const Vec3& p,
                                                    double h, double hip_y) {
    // Surface distance to the closest capsule of each bone, softened and
    // turned into a sharp partition; small weights are floored away so distant
    // bones have exactly zero influence (keeps the upper body identical
    // across gaits that only differ in the legs).
    constexpr int kBones = kJointCount;
    double dist[kBones];
    std::fill(dist, dist + kBones, 1e30);
    for (const Part& part : layout.parts) {
        double d = std::max(0.0, part_distance(part, p));
        dist[part.bone] = std::min(dist[part.bone], d);
    }
    // Leg influence fades out just above the hip joints; the torso above the
    // hips must not move when only the legs differ between gaits.
    double leg_fade = 1.0;
    {
        double t = (p.y - (hip_y + 0.005 * h)) / (0.025 * h);
        if (t >= 1.0)
            leg_fade = 0.0;
        else if (t > 0.0)
            leg_fade = 1.0 - t * t * (3.0 - 2.0 * t);
    }
    const double soften = 0.006 * h;
    double raw[kBones];
    double total = 0.0;
    for (int b = 0; b < kBones; ++b) {
        if (dist[b] > 0.12 * h) {
            raw[b] = 0.0;
            continue;
        }
        double s = dist[b] + soften;
        double w = 1.0 / (s * s);
        w = w * w;
        w = w * w;  // s^-8
        if (is_leg_bone(b)) w *= leg_fade;
        raw[b] = w;
        total += w;
    }
    if (total == 0.0) {
        // Point far from every part: bind rigidly to the nearest bone.
        int nearest = 0;
        for (int b = 1; b < kBones; ++b)
            if (dist[b] < dist[nearest]) nearest = b;
        return {{nearest, 1.0}};
    }
    constexpr double kFloor = 0.002;
    double kept = 0.0;
    for (int b = 0; b < kBones; ++b) {
        raw[b] = std::max(0.0, raw[b] / total - kFloor);
        kept += raw[b];
    }
    std::vector<std::pair<int, double>> out;
    for (int b = 0; b < kBones; ++b) {
        if (raw[b] > 0.0) out.emplace_back(b, raw[b] / kept);
    }
    return out;
}

}  // namespace

void BodyParams::check() const {
    if (!(height > 0.5 && height < 3.0))
        throw std::invalid_argument("body height must be in (0.5, 3.0) m");
    if (!(step_length > 0.0 && step_length < height))
        throw std::invalid_argument("step length must be positive and below body height");
    if (!(grid_cell > 0.0)) throw std::invalid_argument("grid cell must be positive");
    double min_radius = 0.0145 * height;
    if (2.0 * M_PI * min_radius / grid_cell < 8.0)
        throw std::invalid_argument(
            "resolution too low: thinnest capsule would get fewer than 8 radial segments");
}

const SurfaceMarker& Body::marker(const std::string& name) const {
    for (const SurfaceMarker& m : markers)
        if (m.name == name) return m;
    throw std::runtime_error("unknown marker '" + name + "'");
}

// Marching-tetrahedra output has very uneven triangle sizes, which makes the
// per-vertex angle deficit noisy. A few rounds of uniform umbrella relaxation
// with Newton reprojection onto the isosurface evens the sampling out without
// moving the surface.
void relax_onto_surface(TriangleMesh& mesh, const std::vector<Part>& parts, double blend,
                        int iterations) {
    OneRingTable rings = build_one_rings(mesh);
    std::vector<Vec3> next(mesh.vertex_count());
    for (int iter = 0; iter < iterations; ++iter) {
        parallel_for(mesh.vertex_count(), [&](std::size_t v) {
            const std::vector<int>& nbrs = rings.neighbors[v];
            if (nbrs.empty()) {
                next[v] = mesh.vertices[v];
                return;
            }
            Vec3 centroid{};
            for (int n : nbrs) centroid += mesh.vertices[n];
            centroid = centroid / static_cast<double>(nbrs.size());
            Vec3 p = mesh.vertices[v] + (centroid - mesh.vertices[v]) * 0.6;
            for (int step = 0; step < 2; ++step) {
                auto [f, g] = smooth_union_grad(parts, p, blend);
                double g2 = norm2(g);
                if (g2 > 1e-12) p -= g * (f / g2);
            }
            next[v] = p;
        });
        mesh.vertices.swap(next);
    }
}

Body make_body(const BodyParams& params) {
    params.check();
    const double h = params.height;
    Layout layout = build_layout(params);

    detail::IsoGrid grid;
    grid.cell = params.grid_cell;
    // Half-extent across x plus padding; even cube count keeps the grid (and
    // with it the mesh) exactly mirror-symmetric.
    double x_half = 0.28 * h;
    grid.nx = 2 * static_cast<int>(std::ceil(x_half / grid.cell));
    // Fractional offsets keep grid planes off the model's own symmetry planes.
    grid.y0 = -0.045 * h - 0.2137 * grid.cell;
    grid.z0 = -0.115 * h - 0.1531 * grid.cell;
    grid.ny = static_cast<int>(std::ceil((1.045 * h - grid.y0) / grid.cell));
    grid.nz = static_cast<int>(std::ceil((0.17 * h - grid.z0) / grid.cell));

    const double blend = layout.blend;
    auto field = [&layout, blend](const Vec3& p) { return smooth_union(layout.parts, p, blend); };

    Body body;
    body.params = params;
    body.skeleton = layout.skeleton;
    body.rest_mesh = detail::extract_isosurface(grid, field);
    relax_onto_surface(body.rest_mesh, layout.parts, blend, 10);

    const double hip_y = params.hip_height();
    body.weights.vertex_weights.resize(body.rest_mesh.vertex_count());
    parallel_for(body.rest_mesh.vertex_count(), [&](std::size_t v) {
        body.weights.vertex_weights[v] =
            skin_weights_at(layout, body.rest_mesh.vertices[v], h, hip_y);
    });

    auto add_marker = [&](const std::string& name, const Vec3& rest) {
        body.markers.push_back(SurfaceMarker{name, rest, skin_weights_at(layout, rest, h, hip_y)});
    };
    // Kneecap apexes (the patella primitive's front pole) and foot extremes.
    const double knee_y = BodyParams::kKneeRatio * h;
    add_marker("knee_marker_l", {0.052 * h, knee_y + 0.002 * h, 0.045 * h});
    add_marker("knee_marker_r", {-0.052 * h, knee_y + 0.002 * h, 0.045 * h});
    add_marker("heel_l", {0.052 * h, 0.026 * h, -0.0585 * h});
    add_marker("heel_r", {-0.052 * h, 0.026 * h, -0.0585 * h});
    add_marker("toe_l", {0.052 * h, 0.023 * h, 0.1185 * h});
    add_marker("toe_r", {-0.052 * h, 0.023 * h, 0.1185 * h});

    return body;
}

}  // namespace curvegait
