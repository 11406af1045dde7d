// Gait synthesis: joint-angle trajectories for the three simulated gaits,
// linear-blend-skinning pose deformation, and frame-sequence assembly.
//
// Phase convention: fraction 0 is the right-leading contact posture; one
// cycle visits Contact/Low/Passing/High with the right side leading, then the
// same four with the left side leading. The normal gait's left angles are the
// right angles evaluated half a cycle later, which makes mirrored half-cycle
// frames exact mirror images.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "curvegait/body.hpp"

namespace curvegait {

enum class GaitType { Normal, LockedLeftKnee, HalfStep };
enum class Phase { Contact, Low, Passing, High };
enum class Side { Left, Right };

const char* to_string(GaitType gait);
const char* to_string(Phase phase);
const char* to_string(Side side);

struct PostureLabel {
    Phase phase = Phase::Contact;
    Side leading = Side::Right;
    bool operator==(const PostureLabel&) const = default;
};

// Flexion angles in radians; index 0 = left, 1 = right.
struct PoseAngles {
    std::array<double, 2> hip_flexion{};       // + swings the leg forward
    std::array<double, 2> knee_flexion{};      // + bends the shank backward, [0, 2.6]
    std::array<double, 2> ankle_flexion{};     // + lifts the toes
    std::array<double, 2> shoulder_flexion{};  // + swings the arm forward
    std::array<double, 2> elbow_flexion{};     // + bends the forearm forward
    std::array<double, 2> hip_abduction{};     // + swings the leg away from the midline
    Vec3 pelvis_offset{};                      // root translation, m

    // Throws std::invalid_argument when a joint limit is violated.
    void check_limits() const;
};

PoseAngles mirrored(const PoseAngles& angles);

// Rigid world transform of every joint for the given pose.
struct JointTransform {
    std::array<double, 9> rotation{1, 0, 0, 0, 1, 0, 0, 0, 1};  // row-major
    Vec3 translation{};
    Vec3 apply(const Vec3& p) const;
};

std::array<JointTransform, kJointCount> pose_transforms(const Skeleton& skeleton,
                                                        const PoseAngles& angles);
std::array<Vec3, kJointCount> posed_joints(const Skeleton& skeleton, const PoseAngles& angles);
Vec3 posed_marker(const Body& body, const SurfaceMarker& marker, const PoseAngles& angles);

// Linear blend skinning of the rest mesh; connectivity is shared with the
// rest mesh, normals are dropped (recompute as needed).
TriangleMesh pose_body(const Body& body, const PoseAngles& angles);

// Joint trajectories at a phase fraction in [0, 1). hip_scale multiplies the
// leg hip-flexion tables (the step-length tuning knob; 1 = untuned).
PoseAngles gait_angles(GaitType gait, double phase_fraction, double hip_scale = 1.0);

// Heel-to-heel forward distance at the contact posture for a given hip scale.
double step_length_at(const Body& body, double hip_scale);

// Bisect hip_scale so the normal gait's contact step length matches
// body.params.step_length.
double tune_hip_scale(const Body& body);

struct SynthOptions {
    int cycles = 2;
    int frames_per_cycle = 8;
    double noise_sigma = 0.0;  // m, gaussian jitter along vertex normals
    std::uint64_t noise_seed = 1u;
};

struct GaitSequence {
    GaitType gait = GaitType::Normal;
    int cycles = 0;
    int frames_per_cycle = 0;
    double body_height = 0.0;
    double hip_scale = 1.0;
    std::vector<TriangleMesh> frames;            // shared connectivity
    std::vector<PostureLabel> labels;
    std::vector<std::array<Vec3, 2>> knee_markers;  // posed [left, right] per frame
    std::vector<Vec3> pelvis_offsets;               // per frame

    int frame_count() const { return static_cast<int>(frames.size()); }
};

GaitSequence synth_gait(const Body& body, GaitType gait, const SynthOptions& options = {});
GaitSequence synth_gait(const BodyParams& params, GaitType gait,
                        const SynthOptions& options = {});

}  // namespace curvegait
