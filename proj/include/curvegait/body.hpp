// Procedural humanoid rest body.
//
// The body is the smooth union of capsule/sphere primitives laid out from
// anthropometric ratios of the target height, polygonized with marching
// tetrahedra into one closed genus-0 mesh that is exactly mirror-symmetric
// about the x = 0 sagittal plane. Skin weights over a 15-joint skeleton are
// derived from distances to the per-bone capsules.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "curvegait/mesh.hpp"

namespace curvegait {

struct BodyParams {
    double height = 1.73;       // m
    double step_length = 0.65;  // m, heel-to-heel at contact for the normal gait
    double grid_cell = 0.0125;  // m, marching grid spacing

    // Segment placement as fractions of height. The knee ratio is chosen so
    // the knee sits mid-band of the 25-30% detection window with headroom for
    // swing-phase knee lift.
    static constexpr double kKneeRatio = 0.267;
    static constexpr double kThighRatio = 0.245;
    static constexpr double kShankRatio = 0.246;

    double hip_height() const { return (kKneeRatio + kThighRatio) * height; }
    double knee_height() const { return kKneeRatio * height; }
    double ankle_height() const { return (kKneeRatio - kShankRatio) * height; }

    // Throws std::invalid_argument on nonsense values or a grid too coarse to
    // resolve the thinnest capsule (fewer than 8 segments around it).
    void check() const;
};

// Joint indices are fixed; Side-suffixed pairs are (left, right).
enum JointId : int {
    kPelvis = 0,
    kChest,
    kNeck,
    kHipL,
    kKneeL,
    kAnkleL,
    kHipR,
    kKneeR,
    kAnkleR,
    kShoulderL,
    kElbowL,
    kWristL,
    kShoulderR,
    kElbowR,
    kWristR,
    kJointCount,  // 15
};

struct Joint {
    std::string name;
    int parent = -1;   // kPelvis has no parent
    Vec3 rest;         // world-space rest position
};

struct Skeleton {
    std::array<Joint, kJointCount> joints;
};

// Sparse normalized skin weights; each vertex holds (joint id, weight) pairs
// sorted by joint id, weights summing to 1.
struct SkinWeights {
    std::vector<std::vector<std::pair<int, double>>> vertex_weights;
};

// A tracked surface point (skinned like a vertex). The knee markers sit on the
// kneecap apex and serve as the detection oracle.
struct SurfaceMarker {
    std::string name;
    Vec3 rest;
    std::vector<std::pair<int, double>> weights;
};

struct Body {
    BodyParams params;
    TriangleMesh rest_mesh;
    Skeleton skeleton;
    SkinWeights weights;
    std::vector<SurfaceMarker> markers;  // "knee_marker_l", "knee_marker_r"

    const SurfaceMarker& marker(const std::string& name) const;
};

Body make_body(const BodyParams& params = {});

}  // namespace curvegait
